// Copyright 2026 The OriCorner Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ORICORNER_SCENEGEN_HPP
#define ORICORNER_SCENEGEN_HPP

#include <cstdint>
#include <vector>

#include "oricorner/geom.hpp"
#include "oricorner/raster.hpp"

namespace oricorner {

enum class ShapeFamily { rectangle, lshape, tshape, ushape, rotated_rect };

struct NoiseSpec {
  double sigma_pos = 0.0;   // px jitter of heatmap corner positions
  double p_drop = 0.0;      // probability a corner peak is deleted
  double sigma_heat = 0.0;  // additive heatmap noise std
  double sigma_ori = 0.0;   // orientation angular noise std (degrees)
  double mask_flip = 0.0;   // per-cell boundary flip probability
};

struct SceneSpec {
  uint64_t seed = 0;
  GridSize grid{64, 64};
  int min_instances = 1;
  int max_instances = 4;
  std::vector<ShapeFamily> families{
      ShapeFamily::rectangle, ShapeFamily::lshape, ShapeFamily::tshape,
      ShapeFamily::ushape, ShapeFamily::rotated_rect};
  NoiseSpec noise;
};

struct Scene {
  std::vector<Polygon> gt;
  std::vector<RasterStack> rasters;  // one per instance, after corruption
};

// Deterministic function of the spec (including the seed): ground-truth
// polygons placed without overlap (>= 2 px separation, >= 3 px from the
// border), clean targets encoded, then corrupted per the noise spec.  Throws
// PlacementFailureError after 1000 failed placement attempts.
Scene generate_scene(const SceneSpec& spec);

// Pure function of (rasters, noise, seed).
RasterStack corrupt(const RasterStack& rasters, const NoiseSpec& noise,
                    uint64_t seed);

}  // namespace oricorner

#endif  // ORICORNER_SCENEGEN_HPP
