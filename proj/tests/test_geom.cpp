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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "oricorner/geom.hpp"
#include "oricorner/rng.hpp"

using namespace oricorner;

namespace {

Polygon unit_square() { return Polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

Polygon regular_ngon(int n, double radius, Point2 center) {
  std::vector<Point2> v;
  for (int k = 0; k < n; ++k) {
    const double a = 2.0 * M_PI * k / n;
    v.push_back(center + Point2{radius * std::cos(a), radius * std::sin(a)});
  }
  return Polygon(v);
}

Polygon random_convex(Rng& rng) {
  return regular_ngon(rng.uniform_int(3, 9), rng.uniform(1.0, 5.0),
                      {rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)});
}

}  // namespace

TEST_CASE("signed_area basics") {
  CHECK(signed_area(unit_square()) == doctest::Approx(1.0).epsilon(1e-12));
  // Reversed input is normalized back to CCW at construction.
  Polygon rev({{0, 1}, {1, 1}, {1, 0}, {0, 0}});
  CHECK(signed_area(rev) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(signed_area(Polygon({{0, 0}, {2, 0}, {0, 2}})) ==
        doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("signed_area translation invariance") {
  Rng rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    Polygon p = random_convex(rng);
    const Point2 t{rng.uniform(-100.0, 100.0), rng.uniform(-100.0, 100.0)};
    CHECK(signed_area(translated(p, t)) ==
          doctest::Approx(signed_area(p)).epsilon(1e-9));
  }
}

TEST_CASE("polygon construction rules") {
  CHECK_THROWS_AS(Polygon({{0, 0}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Polygon({{0, 0}, {0, 0}, {1e-9, 1e-9}, {0, 0}}),
                  std::invalid_argument);
  const double nan = std::nan("");
  CHECK_THROWS_AS(Polygon({{0, 0}, {1, 0}, {nan, 1}}), std::invalid_argument);
  // Consecutive duplicates are dropped, others kept.
  Polygon p({{0, 0}, {0, 0}, {1, 0}, {1, 1}, {1, 1}, {0, 1}});
  CHECK(p.size() == 4);
  // at_cyclic handles any integer.
  CHECK(p.at_cyclic(-1) == p[3]);
  CHECK(p.at_cyclic(4) == p[0]);
}

TEST_CASE("project_point_segment") {
  auto r = project_point_segment({0, 1}, {-1, 0}, {1, 0});
  CHECK(r.distance == doctest::Approx(1.0));
  CHECK(r.foot.x == doctest::Approx(0.0));
  CHECK(r.foot.y == doctest::Approx(0.0));

  r = project_point_segment({2, 1}, {-1, 0}, {1, 0});
  CHECK(r.distance == doctest::Approx(std::sqrt(2.0)));
  CHECK(r.foot.x == doctest::Approx(1.0));
  CHECK(r.t == doctest::Approx(1.0));

  r = project_point_segment({0.25, 0}, {-1, 0}, {1, 0});
  CHECK(r.distance == doctest::Approx(0.0));

  // Degenerate segment falls back to point distance.
  r = project_point_segment({3, 4}, {0, 0}, {0, 0});
  CHECK(r.distance == doctest::Approx(5.0));
}

TEST_CASE("point_to_polygon_boundary") {
  Polygon sq = unit_square();
  CHECK(point_to_polygon_boundary({0, 0}, sq).distance == doctest::Approx(0.0));
  CHECK(point_to_polygon_boundary({0.5, 0.5}, sq).distance ==
        doctest::Approx(0.5));
  CHECK(point_to_polygon_boundary({2, 0.5}, sq).distance ==
        doctest::Approx(1.0));
}

TEST_CASE("boundary distance is rigid-transform invariant") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Polygon p = random_convex(rng);
    const Point2 q{rng.uniform(-6.0, 6.0), rng.uniform(-6.0, 6.0)};
    const double d0 = point_to_polygon_boundary(q, p).distance;
    const Point2 t{rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0)};
    const double ang = rng.uniform(0.0, 360.0);
    const Point2 center{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    Polygon moved = translated(rotated(p, center, ang), t);
    const double rad = ang * M_PI / 180.0;
    const Point2 rel = q - center;
    const Point2 qq = center +
                      Point2{rel.x * std::cos(rad) - rel.y * std::sin(rad),
                             rel.x * std::sin(rad) + rel.y * std::cos(rad)} +
                      t;
    CHECK(point_to_polygon_boundary(qq, moved).distance ==
          doctest::Approx(d0).epsilon(1e-9));
  }
}

TEST_CASE("interior angles of canonical shapes") {
  auto a = interior_angles(unit_square());
  for (double ang : a) CHECK(ang == doctest::Approx(90.0).epsilon(1e-9));

  auto pent = interior_angles(regular_ngon(5, 2.0, {0, 0}));
  for (double ang : pent) CHECK(ang == doctest::Approx(108.0).epsilon(1e-9));

  // L-shape: five 90-degree corners and one reflex 270.
  Polygon ell({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 3}, {0, 3}});
  auto la = interior_angles(ell);
  int n90 = 0, n270 = 0;
  for (double ang : la) {
    if (std::abs(ang - 90.0) < 1e-9) ++n90;
    if (std::abs(ang - 270.0) < 1e-9) ++n270;
  }
  CHECK(n90 == 5);
  CHECK(n270 == 1);

  // Collinear triple gives exactly 180.
  CHECK(interior_angle({0, 0}, {1, 0}, {2, 0}) == doctest::Approx(180.0));
}

TEST_CASE("interior angles sum to (n-2)*180 for random simple polygons") {
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    Polygon p = random_convex(rng);
    auto a = interior_angles(p);
    const double sum = std::accumulate(a.begin(), a.end(), 0.0);
    CHECK(sum == doctest::Approx((p.size() - 2) * 180.0).epsilon(1e-9));
  }
  // Also with a reflex vertex.
  Polygon ell({{0, 0}, {4, 0}, {4, 2}, {2, 2}, {2, 5}, {0, 5}});
  auto a = interior_angles(ell);
  CHECK(std::accumulate(a.begin(), a.end(), 0.0) ==
        doctest::Approx(4 * 180.0).epsilon(1e-9));
}

TEST_CASE("interior_angle_grad matches finite differences") {
  Rng rng(5);
  const double h = 1e-6;
  int checked = 0;
  while (checked < 100) {
    Point2 pts[3] = {{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)},
                     {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)},
                     {rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)}};
    if (distance(pts[0], pts[1]) < 0.3 || distance(pts[2], pts[1]) < 0.3) {
      continue;
    }
    Point2 g[3];
    interior_angle_grad(pts[0], pts[1], pts[2], &g[0], &g[1], &g[2]);
    // The angle wraps at 0/360; skip near-degenerate configurations.
    const double base = interior_angle(pts[0], pts[1], pts[2]);
    if (base < 5.0 || base > 355.0) continue;
    for (int k = 0; k < 3; ++k) {
      for (int axis = 0; axis < 2; ++axis) {
        Point2 plus[3] = {pts[0], pts[1], pts[2]};
        Point2 minus[3] = {pts[0], pts[1], pts[2]};
        (axis == 0 ? plus[k].x : plus[k].y) += h;
        (axis == 0 ? minus[k].x : minus[k].y) -= h;
        const double fd = (interior_angle(plus[0], plus[1], plus[2]) -
                           interior_angle(minus[0], minus[1], minus[2])) /
                          (2.0 * h);
        const double an = axis == 0 ? g[k].x : g[k].y;
        CHECK(an == doctest::Approx(fd).epsilon(1e-4));
      }
    }
    ++checked;
  }
}

TEST_CASE("point_in_polygon even-odd") {
  Polygon sq = unit_square();
  CHECK(point_in_polygon({0.5, 0.5}, sq.vertices()));
  CHECK_FALSE(point_in_polygon({1.5, 0.5}, sq.vertices()));
  // Hole-like reflex region of an L-shape.
  Polygon ell({{0, 0}, {4, 0}, {4, 2}, {2, 2}, {2, 5}, {0, 5}});
  CHECK(point_in_polygon({1, 1}, ell.vertices()));
  CHECK_FALSE(point_in_polygon({3, 3}, ell.vertices()));
}

TEST_CASE("polygon_iou identity, disjoint, analytic overlap") {
  Polygon sq = unit_square();
  CHECK(polygon_iou(sq, sq) == 1.0);  // identical sample classification

  Polygon far({{10, 10}, {11, 10}, {11, 11}, {10, 11}});
  CHECK(polygon_iou(sq, far) == 0.0);

  // Shift by (0.5, 0): overlap 0.5, union 1.5 -> IoU 1/3.
  Polygon shifted = translated(sq, {0.5, 0});
  CHECK(polygon_iou(sq, shifted) == doctest::Approx(1.0 / 3.0).epsilon(0.02));
}

TEST_CASE("polygon_iou symmetry, bounds, and rectangle accuracy") {
  Rng rng(123);
  for (int trial = 0; trial < 30; ++trial) {
    Polygon p = random_convex(rng);
    Polygon q = random_convex(rng);
    const double a = polygon_iou(p, q);
    const double b = polygon_iou(q, p);
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
    CHECK(a >= 0.0);
    CHECK(a <= 1.0);
  }
  // Axis-aligned rectangles have an analytic IoU.
  for (int trial = 0; trial < 30; ++trial) {
    const double w = rng.uniform(2.0, 8.0), h = rng.uniform(2.0, 8.0);
    const double dx = rng.uniform(0.0, w), dy = rng.uniform(0.0, h);
    Polygon a({{0, 0}, {w, 0}, {w, h}, {0, h}});
    Polygon b = translated(a, {dx, dy});
    const double inter = (w - dx) * (h - dy);
    const double expected = inter / (2 * w * h - inter);
    // Sampling error bound: <= 2 / resolution with the default resolution 8.
    CHECK(std::abs(polygon_iou(a, b) - expected) <= 2.0 / 8.0);
  }
}

TEST_CASE("is_simple") {
  CHECK(is_simple(unit_square()));
  // Bowtie self-intersects.
  Polygon bow({{0, 0}, {2, 2}, {2, 0}, {0, 2}});
  CHECK_FALSE(is_simple(bow));
  Polygon ell({{0, 0}, {4, 0}, {4, 2}, {2, 2}, {2, 5}, {0, 5}});
  CHECK(is_simple(ell));
}

TEST_CASE("bounding_box / translated / rotated") {
  Polygon sq = unit_square();
  Box b = bounding_box(translated(sq, {2, 3}));
  CHECK(b.xmin == doctest::Approx(2.0));
  CHECK(b.ymax == doctest::Approx(4.0));

  // Rotating 90 degrees about the centroid maps the square onto itself.
  Polygon r = rotated(sq, {0.5, 0.5}, 90.0);
  CHECK(polygon_iou(sq, r) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(signed_area(r) == doctest::Approx(1.0).epsilon(1e-12));
}
