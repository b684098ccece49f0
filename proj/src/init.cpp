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

#include "oricorner/init.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "oricorner/errors.hpp"

namespace oricorner {

CornerSet decode_corners(const Grid& heatmap, const Grid& offset_x,
                         const Grid& offset_y, double tau_peak) {
  CornerSet out;
  const int h = heatmap.height();
  const int w = heatmap.width();
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      const double v = heatmap.at(i, j);
      if (v < tau_peak) continue;
      bool is_peak = true;
      for (int di = -1; di <= 1 && is_peak; ++di) {
        for (int dj = -1; dj <= 1 && is_peak; ++dj) {
          if (di == 0 && dj == 0) continue;
          const int ni = i + di;
          const int nj = j + dj;
          if (ni < 0 || ni >= h || nj < 0 || nj >= w) continue;
          const double u = heatmap.at(ni, nj);
          if (u > v) is_peak = false;
          // Equal neighbors: the earlier cell in row-major order wins.
          if (u == v && (ni < i || (ni == i && nj < j))) is_peak = false;
        }
      }
      if (!is_peak) continue;
      out.corners.push_back({{j + 0.5 + offset_x.at(i, j),
                              i + 0.5 + offset_y.at(i, j)},
                             v,
                             CornerSource::detected});
    }
  }
  return out;
}

namespace {

// Largest 4-connected foreground component; returns a 0/1 grid.
Grid largest_component(const Grid& mask) {
  const int h = mask.height();
  const int w = mask.width();
  std::vector<int> label(static_cast<size_t>(h) * w, -1);
  int best_label = -1;
  long best_size = 0;
  int next_label = 0;
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      if (mask.at(i, j) == 0.0 || label[i * w + j] != -1) continue;
      long size = 0;
      std::queue<std::pair<int, int>> q;
      q.push({i, j});
      label[i * w + j] = next_label;
      while (!q.empty()) {
        auto [ci, cj] = q.front();
        q.pop();
        ++size;
        constexpr int di[] = {-1, 1, 0, 0};
        constexpr int dj[] = {0, 0, -1, 1};
        for (int k = 0; k < 4; ++k) {
          const int ni = ci + di[k];
          const int nj = cj + dj[k];
          if (ni < 0 || ni >= h || nj < 0 || nj >= w) continue;
          if (mask.at(ni, nj) == 0.0 || label[ni * w + nj] != -1) continue;
          label[ni * w + nj] = next_label;
          q.push({ni, nj});
        }
      }
      if (size > best_size) {
        best_size = size;
        best_label = next_label;
      }
      ++next_label;
    }
  }
  Grid out(h, w);
  if (best_label < 0) return out;
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      if (label[i * w + j] == best_label) out.at(i, j) = 1.0;
    }
  }
  return out;
}

}  // namespace

Contour extract_contour(const Grid& mask) {
  const int h = mask.height();
  const int w = mask.width();
  const Grid comp = largest_component(mask);

  int si = -1, sj = -1;
  for (int i = 0; i < h && si < 0; ++i) {
    for (int j = 0; j < w; ++j) {
      if (comp.at(i, j) != 0.0) {
        si = i;
        sj = j;
        break;
      }
    }
  }
  if (si < 0) throw EmptyMaskError("extract_contour: empty mask");

  // Moore neighborhood in clockwise order starting east.
  constexpr int mdi[] = {0, 1, 1, 1, 0, -1, -1, -1};
  constexpr int mdj[] = {1, 1, 0, -1, -1, -1, 0, 1};
  auto fg = [&](int i, int j) {
    return i >= 0 && i < h && j >= 0 && j < w && comp.at(i, j) != 0.0;
  };

  std::vector<std::pair<int, int>> cells;
  // Radial-sweep boundary tracing: scan the Moore neighborhood clockwise
  // starting just after the direction of the previous boundary cell.
  int ci = si, cj = sj;
  // The start cell was found row-major, so its west neighbor is background;
  // pretend we arrived from the west.
  int back_dir = 4;  // direction from current cell to the previous cell
  const int start_i = si, start_j = sj;
  bool single = true;
  for (int k = 0; k < 8; ++k) {
    if (fg(si + mdi[k], sj + mdj[k])) {
      single = false;
      break;
    }
  }
  if (single) {
    cells.push_back({si, sj});
  } else {
    long guard = 4L * h * w + 8;
    while (guard-- > 0) {
      cells.push_back({ci, cj});
      int found = -1;
      for (int k = 1; k <= 8; ++k) {
        const int dir = (back_dir + k) % 8;
        if (fg(ci + mdi[dir], cj + mdj[dir])) {
          found = dir;
          break;
        }
      }
      ci += mdi[found];
      cj += mdj[found];
      back_dir = (found + 4) % 8;
      if (ci == start_i && cj == start_j) break;
    }
  }

  // Deduplicate consecutive repeats and the closing repeat.
  std::vector<std::pair<int, int>> uniq;
  for (auto& c : cells) {
    if (uniq.empty() || uniq.back() != c) uniq.push_back(c);
  }
  while (uniq.size() > 1 && uniq.front() == uniq.back()) uniq.pop_back();

  std::vector<Point2> pts;
  pts.reserve(uniq.size());
  for (auto& [i, j] : uniq) pts.push_back({j + 0.5, i + 0.5});

  // Normalize to CCW (positive shoelace) when the ring has area.
  if (pts.size() >= 3 && signed_area(std::span<const Point2>(pts)) < 0.0) {
    std::reverse(pts.begin() + 1, pts.end());
  }

  Contour out;
  out.points = std::move(pts);
  out.arc_length.resize(out.points.size());
  double acc = 0.0;
  for (size_t k = 0; k < out.points.size(); ++k) {
    out.arc_length[k] = acc;
    const Point2& a = out.points[k];
    const Point2& b = out.points[(k + 1) % out.points.size()];
    acc += distance(a, b);
  }
  out.perimeter = acc;
  return out;
}

double contour_distance(const Contour& contour, Point2 p) {
  const size_t n = contour.points.size();
  if (n == 1) return distance(contour.points[0], p);
  double best = std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < n; ++k) {
    best = std::min(best, project_point_segment(p, contour.points[k],
                                                contour.points[(k + 1) % n])
                              .distance);
  }
  return best;
}

int nearest_contour_point(const Contour& contour, Point2 p) {
  int best = 0;
  double bd = std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < contour.points.size(); ++k) {
    const double d = distance(contour.points[k], p);
    if (d < bd) {
      bd = d;
      best = static_cast<int>(k);
    }
  }
  return best;
}

CornerSet filter_corners(const CornerSet& corners, const Contour& contour,
                         double delta_cor2cont) {
  CornerSet out;
  for (const Corner& c : corners.corners) {
    if (contour_distance(contour, c.position) <= delta_cor2cont) {
      out.corners.push_back(c);
    }
  }
  return out;
}

namespace {

std::optional<Polygon> try_order_polygon(const CornerSet& corners,
                                         const Contour& contour) {
  if (corners.corners.size() < 3) return std::nullopt;
  struct Keyed {
    double arc;
    double conf;
    Point2 pos;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(corners.corners.size());
  for (const Corner& c : corners.corners) {
    const int idx = nearest_contour_point(contour, c.position);
    keyed.push_back({contour.arc_length[idx], c.confidence, c.position});
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    if (std::abs(a.arc - b.arc) > 1e-9) return a.arc < b.arc;
    return a.conf > b.conf;
  });
  std::vector<Point2> vs;
  vs.reserve(keyed.size());
  for (const Keyed& k : keyed) vs.push_back(k.pos);
  try {
    return Polygon(std::move(vs));
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

void douglas_peucker(const std::vector<Point2>& pts, size_t lo, size_t hi,
                     double tol, std::vector<bool>* keep) {
  if (hi <= lo + 1) return;
  double worst = -1.0;
  size_t split = lo;
  for (size_t k = lo + 1; k < hi; ++k) {
    const double d =
        project_point_segment(pts[k], pts[lo], pts[hi]).distance;
    if (d > worst) {
      worst = d;
      split = k;
    }
  }
  if (worst > tol) {
    (*keep)[split] = true;
    douglas_peucker(pts, lo, split, tol, keep);
    douglas_peucker(pts, split, hi, tol, keep);
  }
}

// Curvature (turn angle, degrees) at each contour point over a +-window.
std::vector<double> contour_turn_angles(const Contour& contour, int window) {
  const int n = static_cast<int>(contour.points.size());
  std::vector<double> turn(n, 0.0);
  if (n < 3) return turn;
  const int w = std::max(1, std::min(window, n / 4));
  for (int k = 0; k < n; ++k) {
    const Point2 a = contour.points[((k - w) % n + n) % n];
    const Point2 b = contour.points[k];
    const Point2 c = contour.points[(k + w) % n];
    const Point2 d1 = b - a;
    const Point2 d2 = c - b;
    if (norm(d1) < 1e-12 || norm(d2) < 1e-12) continue;
    turn[k] = std::abs(std::atan2(cross(d1, d2), dot(d1, d2))) * 180.0 /
              3.14159265358979323846;
  }
  return turn;
}

}  // namespace

std::vector<Point2> simplify_contour(const Contour& contour, double tolerance) {
  const std::vector<Point2>& pts = contour.points;
  const size_t n = pts.size();
  if (n < 3) return pts;
  // Split the closed ring at point 0 and the point farthest from it.
  size_t far_idx = 1;
  double far_d = 0.0;
  for (size_t k = 1; k < n; ++k) {
    const double d = distance(pts[0], pts[k]);
    if (d > far_d) {
      far_d = d;
      far_idx = k;
    }
  }
  std::vector<bool> keep(n + 1, false);
  keep[0] = keep[far_idx] = true;
  // Treat the ring as pts[0..far_idx] and pts[far_idx..n] + pts[0].
  douglas_peucker(pts, 0, far_idx, tolerance, &keep);
  std::vector<Point2> wrapped(pts.begin(), pts.end());
  wrapped.push_back(pts[0]);
  std::vector<bool> keep2(wrapped.size(), false);
  douglas_peucker(wrapped, far_idx, n, tolerance, &keep2);
  std::vector<Point2> out;
  for (size_t k = 0; k < n; ++k) {
    if (keep[k] || (k >= far_idx && keep2[k])) out.push_back(pts[k]);
  }
  return out;
}

InitResult order_corners(const CornerSet& corners, const Contour& contour) {
  if (auto poly = try_order_polygon(corners, contour)) {
    double conf = 0.0;
    for (const Corner& c : corners.corners) conf += c.confidence;
    conf /= static_cast<double>(corners.corners.size());
    return {*poly, false, conf};
  }
  // Fallback: Douglas-Peucker simplified contour.
  std::vector<Point2> simplified = simplify_contour(contour, 1.0);
  if (simplified.size() < 3) {
    // Degenerate contour (one or two cells): emit a tiny triangle around it.
    const Point2 c = contour.points.front();
    simplified = {{c.x - 0.4, c.y - 0.4}, {c.x + 0.4, c.y - 0.4},
                  {c.x, c.y + 0.4}};
  }
  return {Polygon(std::move(simplified)), true, kSemanticConfidence};
}

CornerSet augment_semantic(const CornerSet& corners, const Contour& contour,
                           double delta_sem2graph, double angle_tol_sem) {
  const int n = static_cast<int>(contour.points.size());
  const std::vector<double> turn = contour_turn_angles(contour, 3);

  // Candidate semantic corners: local curvature maxima above the tolerance.
  const int w = std::max(1, std::min(3, n / 4));
  std::vector<int> candidates;
  for (int k = 0; k < n; ++k) {
    if (turn[k] <= angle_tol_sem) continue;
    bool is_max = true;
    for (int d = -w; d <= w && is_max; ++d) {
      if (d == 0) continue;
      const int m = ((k + d) % n + n) % n;
      if (turn[m] > turn[k] || (turn[m] == turn[k] && m < k)) is_max = false;
    }
    if (is_max) candidates.push_back(k);
  }

  CornerSet out = corners;
  std::vector<bool> used(candidates.size(), false);
  while (true) {
    std::optional<Polygon> graph = try_order_polygon(out, contour);
    int best = -1;
    double best_d = delta_sem2graph;
    for (size_t c = 0; c < candidates.size(); ++c) {
      if (used[c]) continue;
      const Point2 p = contour.points[candidates[c]];
      const double d = graph
                           ? point_to_polygon_boundary(p, *graph).distance
                           : std::numeric_limits<double>::infinity();
      if (d > best_d) {
        best_d = d;
        best = static_cast<int>(c);
      }
    }
    if (best < 0) break;
    used[best] = true;
    out.corners.push_back({contour.points[candidates[best]],
                           kSemanticConfidence, CornerSource::semantic});
  }
  return out;
}

InitOutcome initialize(const RasterStack& rasters, const InitConfig& cfg) {
  InitOutcome outcome{CornerSet{}, CornerSet{}, extract_contour(rasters.mask),
                      InitResult{Polygon({{0, 0}, {1, 0}, {0, 1}}), true, 0.0}};
  const CornerSet decoded = decode_corners(rasters.heatmap, rasters.offset_x,
                                           rasters.offset_y, cfg.tau_peak);
  outcome.detected =
      filter_corners(decoded, outcome.contour, cfg.delta_cor2cont);
  outcome.augmented = augment_semantic(outcome.detected, outcome.contour,
                                       cfg.delta_sem2graph, cfg.angle_tol_sem);
  outcome.result = order_corners(outcome.augmented, outcome.contour);
  return outcome;
}

}  // namespace oricorner
