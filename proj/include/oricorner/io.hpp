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

#ifndef ORICORNER_IO_HPP
#define ORICORNER_IO_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oricorner/init.hpp"
#include "oricorner/losses.hpp"
#include "oricorner/metrics.hpp"
#include "oricorner/raster.hpp"
#include "oricorner/refine.hpp"
#include "oricorner/scenegen.hpp"

namespace oricorner {

// Merged configuration for all CLI commands; flat `key = value` config files
// override the defaults, CLI flags override both.  Unknown keys are rejected
// with ConfigError.
struct RunConfig {
  InitConfig init;
  RefineConfig refine;
  LossWeights weights;
  uint64_t seed = 0;
  int num_scenes = 10;
  GridSize grid{64, 64};
  int min_instances = 1;
  int max_instances = 4;
  NoiseSpec noise;
  int jobs = 1;
};

std::map<std::string, std::string> read_config_file(
    const std::filesystem::path& path);
void apply_config_entry(RunConfig* cfg, const std::string& key,
                        const std::string& value);

// `.grid` text format: "GRID <H> <W> <C> <names>" then H*W lines of C
// full-precision decimal floats, row-major.
void write_grid(const std::filesystem::path& path, const RasterStack& stack);
RasterStack read_grid(const std::filesystem::path& path);

struct ScenePolygons {
  int scene = 0;
  std::vector<InstancePrediction> instances;
  std::vector<bool> fallback;  // parallel to instances; false when absent
};

void write_polygons(const std::filesystem::path& path,
                    const ScenePolygons& scene);
ScenePolygons read_polygons(const std::filesystem::path& path);

void write_report(const std::filesystem::path& json_path,
                  const EvalReport& report);
std::string report_table(const EvalReport& report);

// Atomic text write (temp file + rename).
void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content);

struct SvgOverlay {
  std::vector<Polygon> gt;
  std::vector<Polygon> predictions;
  std::vector<Corner> corners;
  // Orientation arrows: (base, direction) pairs, two per corner.
  std::vector<std::pair<Point2, Point2>> arrows;
  GridSize grid{64, 64};
};

void write_svg(const std::filesystem::path& path, const SvgOverlay& overlay);

}  // namespace oricorner

#endif  // ORICORNER_IO_HPP
