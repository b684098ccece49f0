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

#ifndef ORICORNER_REFINE_HPP
#define ORICORNER_REFINE_HPP

#include <vector>

#include "oricorner/geom.hpp"
#include "oricorner/raster.hpp"

namespace oricorner {

struct RefineConfig {
  int iterations = 100;  // total, split over `stages` with step decay
  int stages = 3;
  double step = 0.2;        // px; halved at each stage boundary
  double clamp_step = 0.5;  // max per-vertex move per iteration (px)
  double mu_heat = 1.0;
  double mu_ori = 1.0;
  double mu_ortho = 0.05;  // per degree
};

// Width of the corner-attraction kernel around decoded corner positions.
inline constexpr double kAttractionSigma = 1.0;

struct Energy {
  double total = 0.0;
  double heat_attraction = 0.0;
  double orientation_alignment = 0.0;
  double orthogonality = 0.0;  // degrees
};

// Geometric energy over vertex coordinates: corner attraction toward the
// sub-pixel corners decoded from heatmap + offsets, orientation consistency
// against the orientation channels, and the orthogonality regularizer.
Energy refine_energy(const Polygon& poly, const RasterStack& rasters,
                     const RefineConfig& cfg);

struct RefineResult {
  Polygon polygon;
  std::vector<Energy> trace;  // one entry per iteration, plus the start
  // True when a candidate had to be discarded for breaking simplicity and the
  // last valid iterate was kept instead.
  bool clipped = false;
};

// Projected subgradient descent with monotone backtracking (step halved on an
// energy increase, at most 5 halvings per iteration).  Vertex count is
// preserved; the result is always a simple polygon when the input is.
RefineResult refine(const Polygon& poly, const RasterStack& rasters,
                    const RefineConfig& cfg);

}  // namespace oricorner

#endif  // ORICORNER_REFINE_HPP
