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

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <regex>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "oricorner/encoder.hpp"
#include "oricorner/errors.hpp"
#include "oricorner/io.hpp"
#include "oricorner/rng.hpp"

namespace fs = std::filesystem;
using namespace oricorner;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitData = 4;

// Runs fn(k) for k in [0, n) on `jobs` threads; per-item work must be
// independent (it is: one scene per item, atomic file writes).
void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
  if (jobs <= 1) {
    for (int k = 0; k < n; ++k) fn(k);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      while (true) {
        const int k = next.fetch_add(1);
        if (k >= n) break;
        try {
          fn(k);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

SceneSpec scene_spec_for(const RunConfig& cfg, int scene_index) {
  SceneSpec spec;
  spec.seed = mix_seed(cfg.seed, static_cast<uint64_t>(scene_index));
  spec.grid = cfg.grid;
  spec.min_instances = cfg.min_instances;
  spec.max_instances = cfg.max_instances;
  spec.noise = cfg.noise;
  return spec;
}

std::string scene_gt_name(int k) { return "scene_" + std::to_string(k) + ".gt.json"; }
std::string scene_pred_name(int k) { return "scene_" + std::to_string(k) + ".pred.json"; }
std::string scene_grid_name(int k, int i) {
  return "scene_" + std::to_string(k) + "." + std::to_string(i) + ".grid";
}

int cmd_gen(const RunConfig& cfg, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  std::vector<std::vector<std::string>> files(cfg.num_scenes);
  parallel_for(cfg.num_scenes, cfg.jobs, [&](int k) {
    const Scene scene = generate_scene(scene_spec_for(cfg, k));
    ScenePolygons gt;
    gt.scene = k;
    for (size_t i = 0; i < scene.gt.size(); ++i) {
      gt.instances.push_back({static_cast<int>(i), scene.gt[i], 1.0});
      gt.fallback.push_back(false);
    }
    const std::string gt_name = scene_gt_name(k);
    write_polygons(out_dir / gt_name, gt);
    files[k].push_back(gt_name);
    for (size_t i = 0; i < scene.rasters.size(); ++i) {
      const std::string grid_name = scene_grid_name(k, static_cast<int>(i));
      write_grid(out_dir / grid_name, scene.rasters[i]);
      files[k].push_back(grid_name);
    }
  });
  nlohmann::json manifest;
  manifest["seed"] = cfg.seed;
  manifest["num_scenes"] = cfg.num_scenes;
  nlohmann::json list = nlohmann::json::array();
  for (const auto& scene_files : files) {
    for (const auto& f : scene_files) list.push_back(f);
  }
  manifest["files"] = std::move(list);
  write_text_atomic(out_dir / "manifest.json", manifest.dump(2) + "\n");
  return 0;
}

// Scene id -> instance ids present as .grid files.
std::map<int, std::vector<int>> scan_grids(const fs::path& dir) {
  const std::regex pat(R"(scene_(\d+)\.(\d+)\.grid)");
  std::map<int, std::vector<int>> out;
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::smatch m;
    const std::string name = entry.path().filename().string();
    if (std::regex_match(name, m, pat)) {
      out[std::stoi(m[1])].push_back(std::stoi(m[2]));
    }
  }
  for (auto& [k, ids] : out) std::sort(ids.begin(), ids.end());
  return out;
}

int cmd_infer(const RunConfig& cfg, const fs::path& scene_dir,
              const fs::path& out_dir) {
  const auto scenes = scan_grids(scene_dir);
  if (scenes.empty()) {
    throw IoError("no scene grids found in " + scene_dir.string());
  }
  fs::create_directories(out_dir);
  std::vector<std::pair<int, std::vector<int>>> items(scenes.begin(),
                                                      scenes.end());
  parallel_for(static_cast<int>(items.size()), cfg.jobs, [&](int idx) {
    const auto& [k, instance_ids] = items[idx];
    ScenePolygons pred;
    pred.scene = k;
    for (int i : instance_ids) {
      const RasterStack rasters = read_grid(scene_dir / scene_grid_name(k, i));
      std::optional<InitOutcome> init;
      try {
        init.emplace(initialize(rasters, cfg.init));
      } catch (const EmptyMaskError&) {
        continue;  // nothing recoverable for this instance
      }
      Polygon poly = init->result.polygon;
      const bool fallback = init->result.fallback;
      if (cfg.refine.iterations > 0) {
        poly = refine(poly, rasters, cfg.refine).polygon;
      }
      pred.instances.push_back({i, poly, init->result.score});
      pred.fallback.push_back(fallback);
    }
    write_polygons(out_dir / scene_pred_name(k), pred);
  });
  return 0;
}

int cmd_eval(const fs::path& gt_dir, const fs::path& pred_dir,
             const fs::path& report_path) {
  const std::regex pat(R"(scene_(\d+)\.gt\.json)");
  std::map<int, fs::path> gt_files;
  if (!fs::is_directory(gt_dir)) throw IoError("not a directory: " + gt_dir.string());
  for (const auto& entry : fs::directory_iterator(gt_dir)) {
    std::smatch m;
    const std::string name = entry.path().filename().string();
    if (std::regex_match(name, m, pat)) gt_files[std::stoi(m[1])] = entry.path();
  }
  if (gt_files.empty()) throw IoError("no gt scenes in " + gt_dir.string());

  // Prediction files for scenes with no ground truth are a mismatch; a
  // missing prediction file counts as zero predictions for that scene.
  std::vector<int> unmatched;
  if (fs::is_directory(pred_dir)) {
    const std::regex pred_pat(R"(scene_(\d+)\.pred\.json)");
    for (const auto& entry : fs::directory_iterator(pred_dir)) {
      std::smatch m;
      const std::string name = entry.path().filename().string();
      if (std::regex_match(name, m, pred_pat) &&
          !gt_files.count(std::stoi(m[1]))) {
        unmatched.push_back(std::stoi(m[1]));
      }
    }
  }
  if (!unmatched.empty()) {
    std::sort(unmatched.begin(), unmatched.end());
    std::cerr << "predictions without ground truth for scenes:";
    for (int k : unmatched) std::cerr << ' ' << k;
    std::cerr << '\n';
    return kExitData;
  }

  std::vector<std::vector<InstancePrediction>> preds;
  std::vector<std::vector<Polygon>> gts;
  for (const auto& [k, gt_path] : gt_files) {
    const ScenePolygons gt = read_polygons(gt_path);
    std::vector<Polygon> scene_gt;
    for (const auto& inst : gt.instances) scene_gt.push_back(inst.polygon);
    gts.push_back(std::move(scene_gt));
    const fs::path pred_path = pred_dir / scene_pred_name(k);
    preds.push_back(fs::exists(pred_path) ? read_polygons(pred_path).instances
                                          : std::vector<InstancePrediction>{});
  }
  const EvalReport report = ap_ar(preds, gts);
  write_report(report_path, report);
  fs::path table_path = report_path;
  table_path.replace_extension(".txt");
  const std::string table = report_table(report);
  write_text_atomic(table_path, table);
  std::cout << table;
  return 0;
}

int cmd_svg(const RunConfig& cfg, const fs::path& gt_path,
            const fs::path& pred_path, const fs::path& out_svg) {
  const ScenePolygons gt = read_polygons(gt_path);
  SvgOverlay overlay;
  overlay.grid = cfg.grid;
  for (const auto& inst : gt.instances) overlay.gt.push_back(inst.polygon);
  if (!pred_path.empty()) {
    const ScenePolygons pred = read_polygons(pred_path);
    for (const auto& inst : pred.instances) {
      overlay.predictions.push_back(inst.polygon);
    }
  }
  // Decoded corners and their two orientation vectors from the grids next to
  // the gt file.
  const fs::path dir = gt_path.parent_path();
  const auto scenes = scan_grids(dir.empty() ? "." : dir);
  if (auto it = scenes.find(gt.scene); it != scenes.end()) {
    for (int i : it->second) {
      const RasterStack rasters = read_grid((dir.empty() ? fs::path(".") : dir) /
                                            scene_grid_name(gt.scene, i));
      const CornerSet corners =
          decode_corners(rasters.heatmap, rasters.offset_x, rasters.offset_y,
                         cfg.init.tau_peak);
      const OrientationView field(rasters);
      for (const Corner& c : corners.corners) {
        overlay.corners.push_back(c);
        const Point2 cw{bilinear(*field.cw_cos, c.position.x, c.position.y),
                        bilinear(*field.cw_sin, c.position.x, c.position.y)};
        const Point2 ccw{bilinear(*field.ccw_cos, c.position.x, c.position.y),
                         bilinear(*field.ccw_sin, c.position.x, c.position.y)};
        overlay.arrows.push_back({c.position, cw});
        overlay.arrows.push_back({c.position, ccw});
      }
    }
  }
  write_svg(out_svg, overlay);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Oriented-corner building polygon pipeline"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path;
  // Flag values are applied after the config file, so they win.
  std::map<std::string, std::string> overrides;

  auto add_override = [&](CLI::App* cmd, const std::string& flag,
                          const std::string& key, const std::string& help) {
    cmd->add_option_function<std::string>(
        flag, [&overrides, key](const std::string& v) { overrides[key] = v; },
        help);
  };

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "flat key = value config file");
    add_override(cmd, "--seed", "seed", "master RNG seed");
    add_override(cmd, "--num-scenes", "num_scenes", "number of scenes");
    add_override(cmd, "--noise-sigma-pos", "noise_sigma_pos",
                 "corner position jitter std (px)");
    add_override(cmd, "--p-drop", "p_drop", "corner drop probability");
    add_override(cmd, "--sigma-ori", "sigma_ori",
                 "orientation noise std (degrees)");
    add_override(cmd, "--delta-cor2cont", "delta_cor2cont",
                 "corner-to-contour filter threshold (px)");
    add_override(cmd, "--delta-sem2graph", "delta_sem2graph",
                 "semantic-corner augmentation threshold (px)");
    add_override(cmd, "--refine-iters", "refine_iters",
                 "refinement iterations (0 disables)");
    add_override(cmd, "--mu-ortho", "mu_ortho",
                 "orthogonality energy weight (per degree)");
    add_override(cmd, "--jobs", "jobs", "scene-level worker threads");
  };

  std::string out_dir, scene_dir, gt_dir, pred_dir, report_path, gt_json,
      pred_json, out_svg;

  CLI::App* gen = app.add_subcommand("gen", "generate synthetic scenes");
  add_common(gen);
  gen->add_option("--out", out_dir, "output directory")->required();

  CLI::App* infer = app.add_subcommand("infer", "run the polygon pipeline");
  add_common(infer);
  infer->add_option("--scenes", scene_dir, "scene directory (grids)")->required();
  infer->add_option("--out", out_dir, "output directory")->required();

  CLI::App* eval = app.add_subcommand("eval", "evaluate predictions");
  add_common(eval);
  eval->add_option("--gt", gt_dir, "ground-truth directory")->required();
  eval->add_option("--pred", pred_dir, "prediction directory")->required();
  eval->add_option("--report", report_path, "report JSON path")->required();

  CLI::App* svg = app.add_subcommand("svg", "render a scene overlay");
  add_common(svg);
  svg->add_option("--gt", gt_json, "scene gt JSON")->required();
  svg->add_option("--pred", pred_json, "scene prediction JSON");
  svg->add_option("--out", out_svg, "output SVG path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (config_path.empty()) {
      if (const char* env = std::getenv("ORICORNER_CONFIG")) config_path = env;
    }
    if (!config_path.empty()) {
      for (const auto& [key, value] : read_config_file(config_path)) {
        apply_config_entry(&cfg, key, value);
      }
    }
    for (const auto& [key, value] : overrides) {
      apply_config_entry(&cfg, key, value);
    }
    if (gen->parsed()) return cmd_gen(cfg, out_dir);
    if (infer->parsed()) return cmd_infer(cfg, scene_dir, out_dir);
    if (eval->parsed()) return cmd_eval(gt_dir, pred_dir, report_path);
    if (svg->parsed()) return cmd_svg(cfg, gt_json, pred_json, out_svg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
