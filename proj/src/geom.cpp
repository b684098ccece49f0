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

#include "oricorner/geom.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace oricorner {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRadToDeg = 180.0 / kPi;

}  // namespace

Polygon::Polygon(std::vector<Point2> vertices) {
  for (const Point2& v : vertices) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
      throw std::invalid_argument("Polygon: non-finite vertex");
    }
  }
  // Drop consecutive near-duplicates, including wrap-around.
  std::vector<Point2> cleaned;
  cleaned.reserve(vertices.size());
  for (const Point2& v : vertices) {
    if (cleaned.empty() || distance(cleaned.back(), v) >= kDupEps) {
      cleaned.push_back(v);
    }
  }
  while (cleaned.size() > 1 &&
         distance(cleaned.front(), cleaned.back()) < kDupEps) {
    cleaned.pop_back();
  }
  if (cleaned.size() < 3) {
    throw std::invalid_argument("Polygon: fewer than 3 distinct vertices");
  }
  if (signed_area(cleaned) < 0.0) {
    std::reverse(cleaned.begin(), cleaned.end());
  }
  vertices_ = std::move(cleaned);
}

double signed_area(std::span<const Point2> ring) {
  double acc = 0.0;
  const size_t n = ring.size();
  for (size_t i = 0; i < n; ++i) {
    const Point2& a = ring[i];
    const Point2& b = ring[(i + 1) % n];
    acc += a.x * b.y - b.x * a.y;
  }
  return 0.5 * acc;
}

double signed_area(const Polygon& p) { return signed_area(p.vertices()); }

SegmentProjection project_point_segment(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const double len2 = dot(ab, ab);
  SegmentProjection out;
  if (len2 < kDupEps * kDupEps) {
    out.t = 0.0;
    out.foot = a;
  } else {
    out.t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    out.foot = a + ab * out.t;
  }
  out.distance = distance(p, out.foot);
  return out;
}

BoundaryProjection point_to_polygon_boundary(Point2 p, const Polygon& poly) {
  BoundaryProjection best;
  best.distance = std::numeric_limits<double>::infinity();
  const int n = poly.size();
  for (int i = 0; i < n; ++i) {
    SegmentProjection proj =
        project_point_segment(p, poly[i], poly.at_cyclic(i + 1));
    if (proj.distance < best.distance) {
      best.distance = proj.distance;
      best.point = proj.foot;
      best.edge = i;
      best.t = proj.t;
    }
  }
  return best;
}

double interior_angle(Point2 prev, Point2 v, Point2 next) {
  const Point2 u = next - v;
  const Point2 w = prev - v;
  double theta = std::atan2(cross(u, w), dot(u, w));
  if (theta < 0.0) theta += 2.0 * kPi;
  return theta * kRadToDeg;
}

void interior_angle_grad(Point2 prev, Point2 v, Point2 next, Point2* g_prev,
                         Point2* g_v, Point2* g_next) {
  const Point2 u = next - v;
  const Point2 w = prev - v;
  const double s = cross(u, w);
  const double c = dot(u, w);
  const double r = s * s + c * c;
  // theta = atan2(s, c); dtheta = (c*ds - s*dc) / r.
  const Point2 ds_du{w.y, -w.x};
  const Point2 dc_du{w.x, w.y};
  const Point2 ds_dw{-u.y, u.x};
  const Point2 dc_dw{u.x, u.y};
  const Point2 dtheta_du = (ds_du * c - dc_du * s) / r;
  const Point2 dtheta_dw = (ds_dw * c - dc_dw * s) / r;
  *g_next = dtheta_du * kRadToDeg;
  *g_prev = dtheta_dw * kRadToDeg;
  *g_v = (dtheta_du + dtheta_dw) * (-kRadToDeg);
}

std::vector<double> interior_angles(const Polygon& poly) {
  const int n = poly.size();
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    out[i] = interior_angle(poly.at_cyclic(i - 1), poly[i], poly.at_cyclic(i + 1));
  }
  return out;
}

bool point_in_polygon(Point2 p, std::span<const Point2> ring) {
  bool inside = false;
  const size_t n = ring.size();
  for (size_t i = 0; i < n; ++i) {
    const Point2& a = ring[i];
    const Point2& b = ring[(i + 1) % n];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double xcross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (p.x < xcross) inside = !inside;
    }
  }
  return inside;
}

namespace {

// Sorted x coordinates where polygon edges cross the horizontal line y.
void scanline_crossings(const Polygon& poly, double y, std::vector<double>* xs) {
  xs->clear();
  const int n = poly.size();
  for (int i = 0; i < n; ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly.at_cyclic(i + 1);
    if ((a.y > y) != (b.y > y)) {
      xs->push_back(a.x + (y - a.y) / (b.y - a.y) * (b.x - a.x));
    }
  }
  std::sort(xs->begin(), xs->end());
}

}  // namespace

double polygon_iou(const Polygon& p, const Polygon& q, int resolution) {
  if (resolution < 1) throw std::invalid_argument("polygon_iou: resolution < 1");
  const Box bp = bounding_box(p);
  const Box bq = bounding_box(q);
  if (bp.xmax < bq.xmin || bq.xmax < bp.xmin || bp.ymax < bq.ymin ||
      bq.ymax < bp.ymin) {
    return 0.0;
  }
  const double xmin = std::min(bp.xmin, bq.xmin);
  const double xmax = std::max(bp.xmax, bq.xmax);
  const double ymin = std::min(bp.ymin, bq.ymin);
  const double ymax = std::max(bp.ymax, bq.ymax);
  const double h = 1.0 / resolution;
  const long nx = std::max<long>(1, std::lround(std::ceil((xmax - xmin) * resolution)));
  const long ny = std::max<long>(1, std::lround(std::ceil((ymax - ymin) * resolution)));
  long inter = 0;
  long uni = 0;
  std::vector<double> xp, xq;
  for (long iy = 0; iy < ny; ++iy) {
    const double y = ymin + (iy + 0.5) * h;
    scanline_crossings(p, y, &xp);
    scanline_crossings(q, y, &xq);
    if (xp.empty() && xq.empty()) continue;
    size_t ip = 0, iq = 0;
    for (long ix = 0; ix < nx; ++ix) {
      const double x = xmin + (ix + 0.5) * h;
      while (ip < xp.size() && xp[ip] <= x) ++ip;
      while (iq < xq.size() && xq[iq] <= x) ++iq;
      const bool in_p = (xp.size() - ip) % 2 == 1;
      const bool in_q = (xq.size() - iq) % 2 == 1;
      if (in_p && in_q) ++inter;
      if (in_p || in_q) ++uni;
    }
  }
  if (uni == 0) return 0.0;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

namespace {

int orient_sign(Point2 a, Point2 b, Point2 c) {
  const double v = cross(b - a, c - a);
  if (v > 0.0) return 1;
  if (v < 0.0) return -1;
  return 0;
}

bool on_segment(Point2 a, Point2 b, Point2 p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool segments_intersect(Point2 p1, Point2 p2, Point2 p3, Point2 p4) {
  const int d1 = orient_sign(p3, p4, p1);
  const int d2 = orient_sign(p3, p4, p2);
  const int d3 = orient_sign(p1, p2, p3);
  const int d4 = orient_sign(p1, p2, p4);
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment(p3, p4, p1)) return true;
  if (d2 == 0 && on_segment(p3, p4, p2)) return true;
  if (d3 == 0 && on_segment(p1, p2, p3)) return true;
  if (d4 == 0 && on_segment(p1, p2, p4)) return true;
  return false;
}

}  // namespace

bool is_simple(const Polygon& poly) {
  const int n = poly.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      // Skip edges sharing a vertex.
      if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
      if (segments_intersect(poly[i], poly.at_cyclic(i + 1), poly[j],
                             poly.at_cyclic(j + 1))) {
        return false;
      }
    }
  }
  return true;
}

Box bounding_box(const Polygon& poly) {
  Box b{poly[0].x, poly[0].y, poly[0].x, poly[0].y};
  for (const Point2& v : poly.vertices()) {
    b.xmin = std::min(b.xmin, v.x);
    b.ymin = std::min(b.ymin, v.y);
    b.xmax = std::max(b.xmax, v.x);
    b.ymax = std::max(b.ymax, v.y);
  }
  return b;
}

Polygon translated(const Polygon& poly, Point2 t) {
  std::vector<Point2> vs = poly.vertices();
  for (Point2& v : vs) v += t;
  return Polygon(std::move(vs));
}

Polygon rotated(const Polygon& poly, Point2 center, double degrees) {
  const double rad = degrees / kRadToDeg;
  const double c = std::cos(rad);
  const double s = std::sin(rad);
  std::vector<Point2> vs = poly.vertices();
  for (Point2& v : vs) {
    const Point2 d = v - center;
    v = center + Point2{c * d.x - s * d.y, s * d.x + c * d.y};
  }
  return Polygon(std::move(vs));
}

}  // namespace oricorner
