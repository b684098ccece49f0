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

#include "oricorner/refine.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "oricorner/init.hpp"
#include "oricorner/losses.hpp"

namespace oricorner {

namespace {

struct CornerField {
  std::vector<Point2> centers;
  std::vector<double> confidences;

  // score(p) = sum_k conf_k * exp(-|p - c_k|^2 / (2 sigma^2)); near 1 at a
  // decoded corner, ~0 elsewhere.
  double score(Point2 p, Point2* grad) const {
    const double inv2s2 = 1.0 / (2.0 * kAttractionSigma * kAttractionSigma);
    double acc = 0.0;
    Point2 g{0.0, 0.0};
    for (size_t k = 0; k < centers.size(); ++k) {
      const Point2 d = p - centers[k];
      const double e = confidences[k] * std::exp(-dot(d, d) * inv2s2);
      acc += e;
      g += d * (-2.0 * inv2s2 * e);
    }
    if (grad != nullptr) *grad = g;
    return acc;
  }
};

CornerField decode_attraction(const RasterStack& rasters) {
  CornerField field;
  // tau 0.5 matches the initialization default; the refiner only needs the
  // peaks, not their ordering.
  const CornerSet corners =
      decode_corners(rasters.heatmap, rasters.offset_x, rasters.offset_y, 0.5);
  for (const Corner& c : corners.corners) {
    field.centers.push_back(c.position);
    field.confidences.push_back(c.confidence);
  }
  return field;
}

Energy eval_energy(const Polygon& poly, const CornerField& corners,
                   const OrientationView& ori, const RefineConfig& cfg,
                   std::vector<Point2>* grad) {
  const int n = poly.size();
  Energy e;

  // Corner attraction.
  std::vector<Point2> heat_grad(n);
  double heat = 0.0;
  for (int i = 0; i < n; ++i) {
    Point2 g;
    const double s = corners.score(poly[i], &g);
    heat += 1.0 - s;
    heat_grad[i] = g * -1.0;
  }
  e.heat_attraction = heat / n;

  e.orientation_alignment = orientation_consistency_loss(poly, ori);
  e.orthogonality = orthogonality_loss(poly);
  e.total = cfg.mu_heat * e.heat_attraction +
            cfg.mu_ori * e.orientation_alignment +
            cfg.mu_ortho * e.orthogonality;

  if (grad != nullptr) {
    grad->assign(n, Point2{});
    const std::vector<Point2> og = orientation_consistency_grad(poly, ori);
    const std::vector<Point2> rg = orthogonality_grad(poly);
    for (int i = 0; i < n; ++i) {
      (*grad)[i] = heat_grad[i] * (cfg.mu_heat / n) + og[i] * cfg.mu_ori +
                   rg[i] * cfg.mu_ortho;
    }
  }
  return e;
}

}  // namespace

Energy refine_energy(const Polygon& poly, const RasterStack& rasters,
                     const RefineConfig& cfg) {
  const CornerField corners = decode_attraction(rasters);
  return eval_energy(poly, corners, OrientationView(rasters), cfg, nullptr);
}

RefineResult refine(const Polygon& poly, const RasterStack& rasters,
                    const RefineConfig& cfg) {
  const CornerField corners = decode_attraction(rasters);
  const OrientationView ori(rasters);

  RefineResult out{poly, {}, false};
  std::vector<Point2> current = poly.vertices();
  std::vector<Point2> grad;
  Energy cur =
      eval_energy(Polygon(current), corners, ori, cfg, &grad);
  out.trace.push_back(cur);

  const int stages = std::max(1, cfg.stages);
  const int per_stage = std::max(1, cfg.iterations / stages);
  for (int it = 0; it < cfg.iterations; ++it) {
    const int stage = std::min(it / per_stage, stages - 1);
    double step = cfg.step * std::pow(0.5, stage);
    bool accepted = false;
    for (int attempt = 0; attempt <= 5 && !accepted; ++attempt) {
      std::vector<Point2> candidate = current;
      for (size_t i = 0; i < candidate.size(); ++i) {
        Point2 move = grad[i] * -step;
        const double m = norm(move);
        if (m > cfg.clamp_step) move = move * (cfg.clamp_step / m);
        candidate[i] += move;
      }
      std::optional<Polygon> cand_poly;
      try {
        cand_poly.emplace(candidate);
      } catch (const std::invalid_argument&) {
      }
      if (!cand_poly || cand_poly->size() != static_cast<int>(candidate.size()) ||
          !is_simple(*cand_poly)) {
        out.clipped = true;
        step *= 0.5;
        continue;
      }
      std::vector<Point2> cand_grad;
      const Energy cand =
          eval_energy(*cand_poly, corners, ori, cfg, &cand_grad);
      if (cand.total <= cur.total + 1e-9) {
        current = cand_poly->vertices();
        cur = cand;
        grad = std::move(cand_grad);
        accepted = true;
      } else {
        step *= 0.5;
      }
    }
    // On a rejected iteration the iterate (and energy) stay put.
    out.trace.push_back(cur);
  }
  out.polygon = Polygon(current);
  return out;
}

}  // namespace oricorner
