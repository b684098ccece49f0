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

#include "oricorner/scenegen.hpp"

#include <algorithm>
#include <cmath>

#include "oricorner/encoder.hpp"
#include "oricorner/errors.hpp"
#include "oricorner/rng.hpp"

namespace oricorner {

namespace {

constexpr double kBorderMargin = 3.0;
constexpr double kSeparation = 2.0;
constexpr int kPlacementAttempts = 1000;

// Shapes in local coordinates with all edge lengths and limb widths >= 6 px,
// which keeps vertex cells isolated for the corner encoder/decoder.
std::vector<Point2> shape_vertices(ShapeFamily family, Rng& rng,
                                   double* out_w, double* out_h) {
  switch (family) {
    case ShapeFamily::rectangle:
    case ShapeFamily::rotated_rect: {
      const double w = rng.uniform(10.0, 24.0);
      const double h = rng.uniform(10.0, 24.0);
      *out_w = w;
      *out_h = h;
      return {{0, 0}, {w, 0}, {w, h}, {0, h}};
    }
    case ShapeFamily::lshape: {
      const double w = rng.uniform(18.0, 28.0);
      const double h = rng.uniform(18.0, 28.0);
      const double w1 = rng.uniform(6.0, w - 6.0);
      const double h1 = rng.uniform(6.0, h - 6.0);
      *out_w = w;
      *out_h = h;
      return {{0, 0}, {w, 0}, {w, h1}, {w1, h1}, {w1, h}, {0, h}};
    }
    case ShapeFamily::tshape: {
      const double w = rng.uniform(20.0, 28.0);
      const double h = rng.uniform(18.0, 28.0);
      const double t = rng.uniform(6.0, w - 12.0);
      const double h1 = rng.uniform(6.0, h - 6.0);
      const double x0 = (w - t) / 2.0;
      *out_w = w;
      *out_h = h;
      return {{0, 0},       {w, 0},      {w, h1},  {x0 + t, h1},
              {x0 + t, h},  {x0, h},     {x0, h1}, {0, h1}};
    }
    case ShapeFamily::ushape: {
      const double w = rng.uniform(20.0, 28.0);
      const double h = rng.uniform(18.0, 28.0);
      const double t = rng.uniform(6.0, (w - 6.0) / 2.0);
      const double h1 = rng.uniform(6.0, h - 6.0);
      *out_w = w;
      *out_h = h;
      return {{0, 0},     {w, 0},      {w, h},  {w - t, h},
              {w - t, h1}, {t, h1},    {t, h},  {0, h}};
    }
  }
  return {};
}

struct PlacedBox {
  double xmin, ymin, xmax, ymax;
};

bool boxes_far_enough(const PlacedBox& a, const PlacedBox& b, double sep) {
  return a.xmax + sep <= b.xmin || b.xmax + sep <= a.xmin ||
         a.ymax + sep <= b.ymin || b.ymax + sep <= a.ymin;
}

}  // namespace

Scene generate_scene(const SceneSpec& spec) {
  Rng scene_rng(mix_seed(spec.seed, 0));
  const int count = scene_rng.uniform_int(spec.min_instances, spec.max_instances);

  Scene scene;
  std::vector<PlacedBox> placed;
  const double gw = spec.grid.width;
  const double gh = spec.grid.height;

  for (int inst = 0; inst < count; ++inst) {
    Rng rng(mix_seed(spec.seed, 1 + inst));
    bool ok = false;
    for (int attempt = 0; attempt < kPlacementAttempts && !ok; ++attempt) {
      // A crowded grid can reject large shapes indefinitely; spend the second
      // half of the attempt budget on small rectangles so the configured
      // instance count is reached whenever it is feasible at all.
      const bool crowded = attempt >= kPlacementAttempts / 2;
      ShapeFamily family = ShapeFamily::rectangle;
      double w = 0.0, h = 0.0;
      std::vector<Point2> local;
      if (crowded) {
        w = rng.uniform(8.0, 12.0);
        h = rng.uniform(8.0, 12.0);
        local = {{0, 0}, {w, 0}, {w, h}, {0, h}};
      } else {
        family = spec.families[rng.uniform_int(
            0, static_cast<int>(spec.families.size()) - 1)];
        local = shape_vertices(family, rng, &w, &h);
      }
      Polygon poly{local};
      if (family == ShapeFamily::rotated_rect) {
        poly = rotated(poly, {w / 2.0, h / 2.0}, rng.uniform(10.0, 80.0));
      }
      Box bb = bounding_box(poly);
      const double bw = bb.xmax - bb.xmin;
      const double bh = bb.ymax - bb.ymin;
      if (bw > gw - 2.0 * kBorderMargin || bh > gh - 2.0 * kBorderMargin) {
        continue;
      }
      const double tx =
          rng.uniform(kBorderMargin - bb.xmin, gw - kBorderMargin - bb.xmax);
      const double ty =
          rng.uniform(kBorderMargin - bb.ymin, gh - kBorderMargin - bb.ymax);
      poly = translated(poly, {tx, ty});
      bb = bounding_box(poly);
      const PlacedBox candidate{bb.xmin, bb.ymin, bb.xmax, bb.ymax};
      bool clear = true;
      for (const PlacedBox& other : placed) {
        if (!boxes_far_enough(candidate, other, kSeparation)) {
          clear = false;
          break;
        }
      }
      if (!clear) continue;
      placed.push_back(candidate);
      scene.gt.push_back(poly);
      ok = true;
    }
    if (!ok) {
      throw PlacementFailureError("generate_scene: placement failed after " +
                                  std::to_string(kPlacementAttempts) +
                                  " attempts");
    }
  }

  for (size_t i = 0; i < scene.gt.size(); ++i) {
    RasterStack clean = encode_targets(scene.gt[i], spec.grid);
    scene.rasters.push_back(
        corrupt(clean, spec.noise, mix_seed(spec.seed, 1000 + i)));
  }
  return scene;
}

RasterStack corrupt(const RasterStack& rasters, const NoiseSpec& noise,
                    uint64_t seed) {
  RasterStack out = rasters;
  Rng rng{seed};
  const int h = rasters.size.height;
  const int w = rasters.size.width;

  // Corner peaks: jitter positions, drop some, re-encode.
  if (noise.sigma_pos > 0.0 || noise.p_drop > 0.0) {
    struct Peak {
      Point2 pos;
      double conf;
    };
    std::vector<Peak> survivors;
    for (int i = 0; i < h; ++i) {
      for (int j = 0; j < w; ++j) {
        if (rasters.heatmap.at(i, j) < 0.5) continue;
        const Point2 pos{j + 0.5 + rasters.offset_x.at(i, j),
                         i + 0.5 + rasters.offset_y.at(i, j)};
        const bool drop = rng.bernoulli(noise.p_drop);
        const double dx = rng.normal(0.0, noise.sigma_pos);
        const double dy = rng.normal(0.0, noise.sigma_pos);
        if (drop) continue;
        Point2 moved = pos + Point2{dx, dy};
        moved.x = std::clamp(moved.x, 0.25, w - 0.25);
        moved.y = std::clamp(moved.y, 0.25, h - 0.25);
        survivors.push_back({moved, rasters.heatmap.at(i, j)});
      }
    }
    out.heatmap = Grid(rasters.size);
    out.offset_x = Grid(rasters.size);
    out.offset_y = Grid(rasters.size);
    for (const Peak& p : survivors) {
      const int j = std::min(static_cast<int>(std::floor(p.pos.x)), w - 1);
      const int i = std::min(static_cast<int>(std::floor(p.pos.y)), h - 1);
      if (out.heatmap.at(i, j) != 0.0) continue;  // collision: keep the first
      out.heatmap.at(i, j) = p.conf;
      out.offset_x.at(i, j) = p.pos.x - (j + 0.5);
      out.offset_y.at(i, j) = p.pos.y - (i + 0.5);
    }
  }

  if (noise.sigma_heat > 0.0) {
    for (double& v : out.heatmap.data()) {
      v = std::clamp(v + rng.normal(0.0, noise.sigma_heat), 0.0, 1.0);
    }
  }

  if (noise.sigma_ori > 0.0) {
    const double to_rad = 3.14159265358979323846 / 180.0;
    for (int i = 0; i < h; ++i) {
      for (int j = 0; j < w; ++j) {
        if (out.edge_mask.at(i, j) == 0.0) continue;
        const double a1 = rng.normal(0.0, noise.sigma_ori) * to_rad;
        const double a2 = rng.normal(0.0, noise.sigma_ori) * to_rad;
        const double cw_ang =
            std::atan2(out.ocw_sin.at(i, j), out.ocw_cos.at(i, j)) + a1;
        const double ccw_ang =
            std::atan2(out.occw_sin.at(i, j), out.occw_cos.at(i, j)) + a2;
        out.ocw_cos.at(i, j) = std::cos(cw_ang);
        out.ocw_sin.at(i, j) = std::sin(cw_ang);
        out.occw_cos.at(i, j) = std::cos(ccw_ang);
        out.occw_sin.at(i, j) = std::sin(ccw_ang);
      }
    }
  }

  if (noise.mask_flip > 0.0) {
    const Grid before = out.mask;
    auto at = [&](int i, int j) {
      return i >= 0 && i < h && j >= 0 && j < w ? before.at(i, j) : 0.0;
    };
    for (int i = 0; i < h; ++i) {
      for (int j = 0; j < w; ++j) {
        const double v = before.at(i, j);
        const bool boundary = at(i - 1, j) != v || at(i + 1, j) != v ||
                              at(i, j - 1) != v || at(i, j + 1) != v;
        if (!boundary) continue;
        if (rng.bernoulli(noise.mask_flip)) out.mask.at(i, j) = 1.0 - v;
      }
    }
  }
  return out;
}

}  // namespace oricorner
