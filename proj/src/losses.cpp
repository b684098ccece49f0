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

#include "oricorner/losses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "oricorner/errors.hpp"

namespace oricorner {

namespace {

void check_same_shape(const Grid& a, const Grid& b, const char* who) {
  if (a.height() != b.height() || a.width() != b.width()) {
    throw std::invalid_argument(std::string(who) + ": shape mismatch");
  }
}

}  // namespace

double heatmap_loss(const Grid& pred, const Grid& target, double w_pos) {
  check_same_shape(pred, target, "heatmap_loss");
  const auto& x = pred.data();
  const auto& y = target.data();
  double acc = 0.0;
  for (size_t k = 0; k < x.size(); ++k) {
    const double xi = std::clamp(x[k], kLogEps, 1.0 - kLogEps);
    acc += w_pos * y[k] * std::log(xi) + (1.0 - y[k]) * std::log(1.0 - xi);
  }
  return -acc / static_cast<double>(x.size());
}

Grid heatmap_loss_grad(const Grid& pred, const Grid& target, double w_pos) {
  check_same_shape(pred, target, "heatmap_loss_grad");
  Grid g(pred.height(), pred.width());
  const auto& x = pred.data();
  const auto& y = target.data();
  const double inv_n = 1.0 / static_cast<double>(x.size());
  for (size_t k = 0; k < x.size(); ++k) {
    if (x[k] <= kLogEps || x[k] >= 1.0 - kLogEps) continue;  // clamp active
    g.data()[k] = -inv_n * (w_pos * y[k] / x[k] - (1.0 - y[k]) / (1.0 - x[k]));
  }
  return g;
}

double smooth_l1(const Grid& pred, const Grid& target, const Grid* valid) {
  check_same_shape(pred, target, "smooth_l1");
  if (valid != nullptr) check_same_shape(pred, *valid, "smooth_l1");
  double acc = 0.0;
  long count = 0;
  for (size_t k = 0; k < pred.data().size(); ++k) {
    if (valid != nullptr && valid->data()[k] == 0.0) continue;
    const double d = std::abs(pred.data()[k] - target.data()[k]);
    acc += d < 1.0 ? 0.5 * d * d : d - 0.5;
    ++count;
  }
  if (count == 0) throw DomainEmptyError("smooth_l1: empty valid domain");
  return acc / static_cast<double>(count);
}

Grid smooth_l1_grad(const Grid& pred, const Grid& target, const Grid* valid) {
  check_same_shape(pred, target, "smooth_l1_grad");
  if (valid != nullptr) check_same_shape(pred, *valid, "smooth_l1_grad");
  Grid g(pred.height(), pred.width());
  long count = 0;
  for (size_t k = 0; k < pred.data().size(); ++k) {
    if (valid != nullptr && valid->data()[k] == 0.0) continue;
    ++count;
  }
  if (count == 0) throw DomainEmptyError("smooth_l1_grad: empty valid domain");
  const double inv = 1.0 / static_cast<double>(count);
  for (size_t k = 0; k < pred.data().size(); ++k) {
    if (valid != nullptr && valid->data()[k] == 0.0) continue;
    const double d = pred.data()[k] - target.data()[k];
    g.data()[k] = inv * (std::abs(d) < 1.0 ? d : (d > 0.0 ? 1.0 : -1.0));
  }
  return g;
}

MatchResult biprojection_match(const Polygon& pred, const Polygon& gt,
                               double r_match) {
  const int np = pred.size();
  const int ng = gt.size();
  MatchResult out;
  out.normalizer = std::max(np, ng);

  // Nearest gt for each pred vertex and vice versa; ties to smaller index.
  std::vector<int> near_gt(np), near_pred(ng);
  for (int i = 0; i < np; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < ng; ++j) {
      const double d = distance(pred[i], gt[j]);
      if (d < best) {
        best = d;
        near_gt[i] = j;
      }
    }
  }
  for (int j = 0; j < ng; ++j) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < np; ++i) {
      const double d = distance(pred[i], gt[j]);
      if (d < best) {
        best = d;
        near_pred[j] = i;
      }
    }
  }

  std::vector<bool> pred_used(np, false), gt_used(ng, false);
  for (int i = 0; i < np; ++i) {
    const int j = near_gt[i];
    if (near_pred[j] == i && distance(pred[i], gt[j]) <= r_match) {
      out.matched.push_back({i, j, distance(pred[i], gt[j])});
      pred_used[i] = true;
      gt_used[j] = true;
    }
  }
  for (int i = 0; i < np; ++i) {
    if (pred_used[i]) continue;
    const BoundaryProjection bp = point_to_polygon_boundary(pred[i], gt);
    out.extra.push_back({MatchResult::ExtraSide::pred, i, bp.edge, bp.t,
                         bp.point, bp.distance});
  }
  for (int j = 0; j < ng; ++j) {
    if (gt_used[j]) continue;
    const BoundaryProjection bp = point_to_polygon_boundary(gt[j], pred);
    out.extra.push_back({MatchResult::ExtraSide::gt, j, bp.edge, bp.t,
                         bp.point, bp.distance});
  }
  return out;
}

double biprojection_loss(const MatchResult& match) {
  double acc = 0.0;
  for (const auto& m : match.matched) acc += m.dist;
  for (const auto& e : match.extra) acc += e.dist;
  return acc / static_cast<double>(match.normalizer);
}

double biprojection_eval(const Polygon& pred, const Polygon& gt,
                         const MatchResult& match) {
  double acc = 0.0;
  for (const auto& m : match.matched) {
    acc += distance(pred[m.pred_index], gt[m.gt_index]);
  }
  for (const auto& e : match.extra) {
    if (e.side == MatchResult::ExtraSide::pred) {
      const int k = e.edge;
      acc += project_point_segment(pred[e.vertex], gt[k], gt.at_cyclic(k + 1))
                 .distance;
    } else {
      const int k = e.edge;
      acc += project_point_segment(gt[e.vertex], pred[k], pred.at_cyclic(k + 1))
                 .distance;
    }
  }
  return acc / static_cast<double>(match.normalizer);
}

std::vector<Point2> biprojection_grad(const Polygon& pred, const Polygon& gt,
                                      const MatchResult& match) {
  const int np = pred.size();
  std::vector<Point2> grad(np);
  const double inv_n = 1.0 / static_cast<double>(match.normalizer);
  for (const auto& m : match.matched) {
    const Point2 d = pred[m.pred_index] - gt[m.gt_index];
    const double r = norm(d);
    if (r > 1e-12) grad[m.pred_index] += d * (inv_n / r);
  }
  for (const auto& e : match.extra) {
    if (e.side == MatchResult::ExtraSide::pred) {
      const SegmentProjection proj = project_point_segment(
          pred[e.vertex], gt[e.edge], gt.at_cyclic(e.edge + 1));
      if (proj.distance > 1e-12) {
        grad[e.vertex] += (pred[e.vertex] - proj.foot) * (inv_n / proj.distance);
      }
    } else {
      // gt vertex projected onto a pred edge; the foot moves with the edge
      // endpoints (envelope: foot parameter fixed at the optimum).
      const int a = e.edge;
      const int b = (e.edge + 1) % np;
      const SegmentProjection proj =
          project_point_segment(gt[e.vertex], pred[a], pred[b]);
      if (proj.distance > 1e-12) {
        const Point2 u = (gt[e.vertex] - proj.foot) * (inv_n / proj.distance);
        grad[a] += u * -(1.0 - proj.t);
        grad[b] += u * -proj.t;
      }
    }
  }
  return grad;
}

namespace {

struct OriSample {
  Point2 raw;       // interpolated (cos, sin)
  Point2 dcos;      // spatial gradient of the cos channel
  Point2 dsin;      // spatial gradient of the sin channel
};

OriSample sample_pair(const Grid& cos_g, const Grid& sin_g, Point2 p) {
  OriSample s;
  s.raw.x = bilinear_with_grad(cos_g, p.x, p.y, &s.dcos);
  s.raw.y = bilinear_with_grad(sin_g, p.x, p.y, &s.dsin);
  return s;
}

}  // namespace

double orientation_consistency_loss(const Polygon& poly,
                                    const OrientationView& field) {
  const int n = poly.size();
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const OriSample a =
        sample_pair(*field.ccw_cos, *field.ccw_sin, poly[i]);
    const OriSample b =
        sample_pair(*field.cw_cos, *field.cw_sin, poly.at_cyclic(i + 1));
    const double na = norm(a.raw);
    const double nb = norm(b.raw);
    if (na < kOriNormEps || nb < kOriNormEps) {
      acc += 1.0;  // neutral term outside the field
      continue;
    }
    acc += 1.0 + dot(a.raw / na, b.raw / nb);
  }
  return acc / static_cast<double>(n);
}

std::vector<Point2> orientation_consistency_grad(const Polygon& poly,
                                                 const OrientationView& field) {
  const int n = poly.size();
  std::vector<Point2> grad(n);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (int i = 0; i < n; ++i) {
    const int inext = (i + 1) % n;
    const OriSample a = sample_pair(*field.ccw_cos, *field.ccw_sin, poly[i]);
    const OriSample b =
        sample_pair(*field.cw_cos, *field.cw_sin, poly[inext]);
    const double na = norm(a.raw);
    const double nb = norm(b.raw);
    if (na < kOriNormEps || nb < kOriNormEps) continue;
    const Point2 ahat = a.raw / na;
    const Point2 bhat = b.raw / nb;
    // d<ahat, bhat>/dp = J_a^T (I - ahat ahat^T)/|a| bhat, and symmetrically.
    const Point2 pa = (bhat - ahat * dot(ahat, bhat)) / na;
    grad[i] += Point2{pa.x * a.dcos.x + pa.y * a.dsin.x,
                      pa.x * a.dcos.y + pa.y * a.dsin.y} *
               inv_n;
    const Point2 pb = (ahat - bhat * dot(ahat, bhat)) / nb;
    grad[inext] += Point2{pb.x * b.dcos.x + pb.y * b.dsin.x,
                          pb.x * b.dcos.y + pb.y * b.dsin.y} *
                   inv_n;
  }
  return grad;
}

namespace {

// Peaks include 360 so the distance is circular; interior angles live in
// [0, 360).
constexpr double kPeaks[] = {0.0, 90.0, 180.0, 270.0, 360.0};

double nearest_peak(double angle) {
  double best = kPeaks[0];
  for (double p : kPeaks) {
    if (std::abs(angle - p) < std::abs(angle - best)) best = p;
  }
  return best;
}

}  // namespace

double orthogonality_loss(const Polygon& poly) {
  const auto angles = interior_angles(poly);
  double acc = 0.0;
  for (double w : angles) acc += std::abs(w - nearest_peak(w));
  return acc / static_cast<double>(angles.size());
}

std::vector<Point2> orthogonality_grad(const Polygon& poly) {
  const int n = poly.size();
  std::vector<Point2> grad(n);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (int i = 0; i < n; ++i) {
    const Point2 prev = poly.at_cyclic(i - 1);
    const Point2 v = poly[i];
    const Point2 next = poly.at_cyclic(i + 1);
    const double w = interior_angle(prev, v, next);
    const double d = w - nearest_peak(w);
    if (d == 0.0) continue;  // exact peak: subgradient 0
    const double s = d > 0.0 ? inv_n : -inv_n;
    Point2 gp, gv, gn;
    interior_angle_grad(prev, v, next, &gp, &gv, &gn);
    grad[(i - 1 + n) % n] += gp * s;
    grad[i] += gv * s;
    grad[(i + 1) % n] += gn * s;
  }
  return grad;
}

double total_loss(const LossParts& p, const LossWeights& w) {
  return w.lambda_heat * p.heat + w.lambda_offset * p.offset +
         w.lambda_orient * p.orient + w.lambda_poly * p.poly +
         w.lambda_cons * p.cons + w.lambda_ortho * p.ortho;
}

}  // namespace oricorner
