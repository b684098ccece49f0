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

#include "oricorner/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "oricorner/errors.hpp"

namespace oricorner {

namespace {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& s, const std::string& key) {
  try {
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid numeric value '" + s + "' for key '" + key + "'");
  }
}

long parse_long(const std::string& s, const std::string& key) {
  try {
    size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid integer value '" + s + "' for key '" + key + "'");
  }
}

std::string trim(const std::string& s) {
  const size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::map<std::string, std::string> read_config_file(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        " is not 'key = value': " + t);
    }
    out[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return out;
}

void apply_config_entry(RunConfig* cfg, const std::string& key,
                        const std::string& value) {
  if (key == "delta_cor2cont") cfg->init.delta_cor2cont = parse_double(value, key);
  else if (key == "delta_sem2graph") cfg->init.delta_sem2graph = parse_double(value, key);
  else if (key == "tau_peak") cfg->init.tau_peak = parse_double(value, key);
  else if (key == "angle_tol_sem") cfg->init.angle_tol_sem = parse_double(value, key);
  else if (key == "refine_iters") cfg->refine.iterations = static_cast<int>(parse_long(value, key));
  else if (key == "refine_step") cfg->refine.step = parse_double(value, key);
  else if (key == "mu_heat") cfg->refine.mu_heat = parse_double(value, key);
  else if (key == "mu_ori") cfg->refine.mu_ori = parse_double(value, key);
  else if (key == "mu_ortho") cfg->refine.mu_ortho = parse_double(value, key);
  else if (key == "clamp_step") cfg->refine.clamp_step = parse_double(value, key);
  else if (key == "w_pos") cfg->weights.w_pos = parse_double(value, key);
  else if (key == "lambda_heat") cfg->weights.lambda_heat = parse_double(value, key);
  else if (key == "lambda_offset") cfg->weights.lambda_offset = parse_double(value, key);
  else if (key == "lambda_orient") cfg->weights.lambda_orient = parse_double(value, key);
  else if (key == "lambda_poly") cfg->weights.lambda_poly = parse_double(value, key);
  else if (key == "lambda_cons") cfg->weights.lambda_cons = parse_double(value, key);
  else if (key == "lambda_ortho") cfg->weights.lambda_ortho = parse_double(value, key);
  else if (key == "seed") cfg->seed = static_cast<uint64_t>(parse_long(value, key));
  else if (key == "num_scenes") cfg->num_scenes = static_cast<int>(parse_long(value, key));
  else if (key == "grid_height") cfg->grid.height = static_cast<int>(parse_long(value, key));
  else if (key == "grid_width") cfg->grid.width = static_cast<int>(parse_long(value, key));
  else if (key == "min_instances") cfg->min_instances = static_cast<int>(parse_long(value, key));
  else if (key == "max_instances") cfg->max_instances = static_cast<int>(parse_long(value, key));
  else if (key == "noise_sigma_pos") cfg->noise.sigma_pos = parse_double(value, key);
  else if (key == "p_drop") cfg->noise.p_drop = parse_double(value, key);
  else if (key == "sigma_heat") cfg->noise.sigma_heat = parse_double(value, key);
  else if (key == "sigma_ori") cfg->noise.sigma_ori = parse_double(value, key);
  else if (key == "mask_flip") cfg->noise.mask_flip = parse_double(value, key);
  else if (key == "jobs") cfg->jobs = static_cast<int>(parse_long(value, key));
  else throw ConfigError("unknown config key '" + key + "'");
}

namespace {

constexpr const char* kGridChannels =
    "mask,heatmap,offset_x,offset_y,ocw_cos,ocw_sin,occw_cos,occw_sin,edge_mask";

std::vector<Grid*> channel_ptrs(RasterStack& s) {
  return {&s.mask,    &s.heatmap,  &s.offset_x, &s.offset_y, &s.ocw_cos,
          &s.ocw_sin, &s.occw_cos, &s.occw_sin, &s.edge_mask};
}

std::vector<const Grid*> channel_ptrs(const RasterStack& s) {
  return {&s.mask,    &s.heatmap,  &s.offset_x, &s.offset_y, &s.ocw_cos,
          &s.ocw_sin, &s.occw_cos, &s.occw_sin, &s.edge_mask};
}

}  // namespace

void write_grid(const std::filesystem::path& path, const RasterStack& stack) {
  std::ostringstream out;
  const auto channels = channel_ptrs(stack);
  out << "GRID " << stack.size.height << ' ' << stack.size.width << ' '
      << channels.size() << ' ' << kGridChannels << '\n';
  for (int i = 0; i < stack.size.height; ++i) {
    for (int j = 0; j < stack.size.width; ++j) {
      for (size_t c = 0; c < channels.size(); ++c) {
        if (c > 0) out << ' ';
        out << format_double(channels[c]->at(i, j));
      }
      out << '\n';
    }
  }
  write_text_atomic(path, out.str());
}

RasterStack read_grid(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open grid file: " + path.string());
  std::string magic, names;
  int h = 0, w = 0, c = 0;
  in >> magic >> h >> w >> c >> names;
  if (magic != "GRID" || h < 1 || w < 1) {
    throw DataError("bad grid header in " + path.string());
  }
  if (c != 9 || names != kGridChannels) {
    throw DataError("unexpected grid channels in " + path.string());
  }
  RasterStack stack({h, w});
  auto channels = channel_ptrs(stack);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      for (Grid* g : channels) {
        if (!(in >> g->at(i, j))) {
          throw DataError("truncated grid file: " + path.string());
        }
      }
    }
  }
  return stack;
}

void write_polygons(const std::filesystem::path& path,
                    const ScenePolygons& scene) {
  json root;
  root["scene"] = scene.scene;
  json instances = json::array();
  for (size_t k = 0; k < scene.instances.size(); ++k) {
    const InstancePrediction& inst = scene.instances[k];
    json obj;
    obj["id"] = inst.id;
    json poly = json::array();
    for (const Point2& v : inst.polygon.vertices()) {
      poly.push_back(json::array({v.x, v.y}));
    }
    obj["polygon"] = std::move(poly);
    obj["score"] = inst.score;
    if (k < scene.fallback.size() && scene.fallback[k]) obj["fallback"] = true;
    instances.push_back(std::move(obj));
  }
  root["instances"] = std::move(instances);
  write_text_atomic(path, root.dump(2) + "\n");
}

ScenePolygons read_polygons(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open polygon file: " + path.string());
  json root;
  try {
    in >> root;
  } catch (const json::exception& e) {
    throw DataError("bad JSON in " + path.string() + ": " + e.what());
  }
  ScenePolygons out;
  try {
    out.scene = root.at("scene").get<int>();
    for (const json& obj : root.at("instances")) {
      std::vector<Point2> vs;
      for (const json& v : obj.at("polygon")) {
        vs.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
      }
      InstancePrediction inst{obj.at("id").get<int>(), Polygon(std::move(vs)),
                              obj.value("score", 1.0)};
      out.instances.push_back(std::move(inst));
      out.fallback.push_back(obj.value("fallback", false));
    }
  } catch (const json::exception& e) {
    throw DataError("bad polygon schema in " + path.string() + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError("bad polygon in " + path.string() + ": " + e.what());
  }
  return out;
}

void write_report(const std::filesystem::path& json_path,
                  const EvalReport& report) {
  json root;
  root["ap"] = report.ap;
  root["ar"] = report.ar;
  root["ap50"] = report.ap50;
  root["mean_polis"] = report.mean_polis;
  root["mean_ciou"] = report.mean_ciou;
  root["num_gt"] = report.num_gt;
  root["num_pred"] = report.num_pred;
  json per = json::array();
  for (const auto& pi : report.per_instance) {
    json obj;
    obj["scene"] = pi.scene;
    obj["gt_index"] = pi.gt_index;
    obj["matched"] = pi.matched;
    if (pi.matched) {
      obj["polis"] = pi.polis;
      obj["ciou"] = pi.ciou;
    }
    per.push_back(std::move(obj));
  }
  root["per_instance"] = std::move(per);
  write_text_atomic(json_path, root.dump(2) + "\n");
}

std::string report_table(const EvalReport& report) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "%8s %8s %8s %8s %8s\n%8.4f %8.4f %8.4f %8.4f %8.4f\n", "AP",
                "AR", "AP50", "PoLiS", "C-IoU", report.ap, report.ar,
                report.ap50, report.mean_polis, report.mean_ciou);
  return buf;
}

void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code dir_ec;
    std::filesystem::create_directories(path.parent_path(), dir_ec);
  }
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << content;
    if (!out) throw IoError("short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("rename failed for " + path.string() + ": " + ec.message());
}

namespace {

void svg_polygon(std::ostringstream& out, const Polygon& poly,
                 const char* cls, const char* stroke) {
  out << "  <polygon class=\"" << cls << "\" points=\"";
  for (const Point2& v : poly.vertices()) {
    out << format_double(v.x) << ',' << format_double(v.y) << ' ';
  }
  out << "\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"0.15\"/>\n";
}

}  // namespace

void write_svg(const std::filesystem::path& path, const SvgOverlay& overlay) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 "
      << overlay.grid.width << ' ' << overlay.grid.height << "\">\n";
  for (const Polygon& g : overlay.gt) svg_polygon(out, g, "gt", "#2a7f2a");
  for (const Polygon& p : overlay.predictions) {
    svg_polygon(out, p, "pred", "#c03030");
  }
  for (const Corner& c : overlay.corners) {
    out << "  <circle class=\"corner\" cx=\"" << format_double(c.position.x)
        << "\" cy=\"" << format_double(c.position.y)
        << "\" r=\"0.3\" fill=\""
        << (c.source == CornerSource::detected ? "#3050c0" : "#c09030")
        << "\"/>\n";
  }
  for (const auto& [base, dir] : overlay.arrows) {
    const Point2 tip = base + dir * 2.0;
    out << "  <line class=\"ori-arrow\" x1=\"" << format_double(base.x)
        << "\" y1=\"" << format_double(base.y) << "\" x2=\""
        << format_double(tip.x) << "\" y2=\"" << format_double(tip.y)
        << "\" stroke=\"#707070\" stroke-width=\"0.1\"/>\n";
  }
  out << "</svg>\n";
  write_text_atomic(path, out.str());
}

}  // namespace oricorner
