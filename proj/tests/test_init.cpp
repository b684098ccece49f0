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

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "oricorner/encoder.hpp"
#include "oricorner/errors.hpp"
#include "oricorner/init.hpp"
#include "oricorner/metrics.hpp"
#include "oricorner/rng.hpp"

using namespace oricorner;

namespace {

// Brute-force NMS oracle: a cell survives iff it is >= tau and no 3x3
// neighbor beats it (greater value, or equal value earlier in row-major
// order).  Written independently of the implementation's loop structure.
std::set<std::pair<int, int>> nms_oracle(const Grid& heat, double tau) {
  std::set<std::pair<int, int>> out;
  for (int i = 0; i < heat.height(); ++i) {
    for (int j = 0; j < heat.width(); ++j) {
      if (heat.at(i, j) < tau) continue;
      bool keep = true;
      for (int ni = std::max(0, i - 1); ni <= std::min(heat.height() - 1, i + 1);
           ++ni) {
        for (int nj = std::max(0, j - 1);
             nj <= std::min(heat.width() - 1, j + 1); ++nj) {
          if (ni == i && nj == j) continue;
          if (heat.at(ni, nj) > heat.at(i, j)) keep = false;
          if (heat.at(ni, nj) == heat.at(i, j) &&
              (ni * heat.width() + nj) < (i * heat.width() + j)) {
            keep = false;
          }
        }
      }
      if (keep) out.insert({i, j});
    }
  }
  return out;
}

// Brute-force boundary-cell oracle: foreground cells of the given 0/1 grid
// with at least one 4-neighbor outside the foreground (grid border counts).
std::set<std::pair<int, int>> boundary_oracle(const Grid& comp) {
  std::set<std::pair<int, int>> out;
  auto fg = [&](int i, int j) {
    return i >= 0 && i < comp.height() && j >= 0 && j < comp.width() &&
           comp.at(i, j) != 0.0;
  };
  for (int i = 0; i < comp.height(); ++i) {
    for (int j = 0; j < comp.width(); ++j) {
      if (!fg(i, j)) continue;
      if (!fg(i - 1, j) || !fg(i + 1, j) || !fg(i, j - 1) || !fg(i, j + 1)) {
        out.insert({i, j});
      }
    }
  }
  return out;
}

Grid rect_mask(GridSize size, int i0, int i1, int j0, int j1) {
  Grid g(size);
  for (int i = i0; i <= i1; ++i) {
    for (int j = j0; j <= j1; ++j) g.at(i, j) = 1.0;
  }
  return g;
}

}  // namespace

TEST_CASE("decode_corners round trip on encoder output") {
  Polygon sq({{10.25, 10.75}, {30.5, 10.25}, {30.0, 30.5}, {10.75, 30.0}});
  RasterStack t = encode_targets(sq, {64, 64});
  CornerSet c = decode_corners(t.heatmap, t.offset_x, t.offset_y, 0.5);
  REQUIRE(c.corners.size() == 4);
  for (const Point2& v : sq.vertices()) {
    double best = 1e9;
    for (const Corner& corner : c.corners) {
      best = std::min(best, distance(corner.position, v));
    }
    CHECK(best < 1e-9);
  }
  for (const Corner& corner : c.corners) {
    CHECK(corner.confidence == 1.0);
    CHECK(corner.source == CornerSource::detected);
  }
}

TEST_CASE("decode_corners empty map and adjacent-cell NMS") {
  Grid zero(8, 8), off(8, 8);
  CHECK(decode_corners(zero, off, off, 0.5).corners.empty());

  Grid heat(8, 8);
  heat.at(3, 3) = 0.9;
  heat.at(3, 4) = 0.8;
  CornerSet c = decode_corners(heat, off, off, 0.5);
  REQUIRE(c.corners.size() == 1);
  CHECK(c.corners[0].confidence == doctest::Approx(0.9));
  CHECK(c.corners[0].position.x == doctest::Approx(3.5));
}

TEST_CASE("decode_corners agrees with the brute-force NMS oracle") {
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Grid heat(10, 10), off(10, 10);
    for (double& v : heat.data()) {
      // Coarse quantization forces plenty of exact ties.
      v = std::round(rng.uniform(0.0, 1.0) * 4.0) / 4.0;
    }
    CornerSet c = decode_corners(heat, off, off, 0.5);
    std::set<std::pair<int, int>> got;
    for (const Corner& corner : c.corners) {
      got.insert({static_cast<int>(std::floor(corner.position.y)),
                  static_cast<int>(std::floor(corner.position.x))});
    }
    CHECK(got == nms_oracle(heat, 0.5));
  }
}

TEST_CASE("extract_contour of a 3x3 block") {
  Grid mask = rect_mask({8, 8}, 2, 4, 2, 4);
  Contour c = extract_contour(mask);
  // All 8 non-center cells are boundary cells.
  CHECK(c.points.size() == 8);
  std::set<std::pair<int, int>> got;
  for (const Point2& p : c.points) {
    got.insert({static_cast<int>(p.y), static_cast<int>(p.x)});
  }
  CHECK(got == boundary_oracle(rect_mask({8, 8}, 2, 4, 2, 4)));
  // CCW ring with positive area, consecutive cells 8-adjacent.
  CHECK(signed_area(std::span<const Point2>(c.points)) > 0.0);
  for (size_t k = 0; k < c.points.size(); ++k) {
    const Point2 d = c.points[(k + 1) % c.points.size()] - c.points[k];
    CHECK(std::max(std::abs(d.x), std::abs(d.y)) <= 1.0 + 1e-12);
  }
  // Arc length bookkeeping.
  CHECK(c.arc_length[0] == 0.0);
  CHECK(std::is_sorted(c.arc_length.begin(), c.arc_length.end()));
  CHECK(c.perimeter > 0.0);
}

TEST_CASE("extract_contour random blobs match the boundary oracle") {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    // A random rectangle union keeps the largest component well defined.
    Grid mask = rect_mask({24, 24}, rng.uniform_int(2, 6),
                          rng.uniform_int(12, 20), rng.uniform_int(2, 6),
                          rng.uniform_int(12, 20));
    Contour c = extract_contour(mask);
    std::set<std::pair<int, int>> got;
    for (const Point2& p : c.points) {
      got.insert({static_cast<int>(p.y), static_cast<int>(p.x)});
    }
    CHECK(got == boundary_oracle(mask));
  }
}

TEST_CASE("extract_contour degenerate and multi-component cases") {
  Grid empty(8, 8);
  CHECK_THROWS_AS(extract_contour(empty), EmptyMaskError);

  Grid single(8, 8);
  single.at(3, 4) = 1.0;
  Contour c = extract_contour(single);
  REQUIRE(c.points.size() == 1);
  CHECK(c.points[0] == Point2{4.5, 3.5});
  CHECK(c.perimeter == 0.0);

  // Two components: only the larger is traced.
  Grid two = rect_mask({16, 16}, 2, 6, 2, 6);
  two.at(12, 12) = 1.0;
  c = extract_contour(two);
  for (const Point2& p : c.points) {
    CHECK(p.x < 8.0);
    CHECK(p.y < 8.0);
  }
}

TEST_CASE("filter_corners threshold semantics") {
  Grid mask = rect_mask({32, 32}, 8, 16, 8, 16);
  Contour contour = extract_contour(mask);
  CornerSet in;
  in.corners.push_back({{8.5, 8.5}, 1.0, CornerSource::detected});  // on it
  // 6.1 px above the top contour row y = 8.5: outside delta = 5.
  in.corners.push_back({{12.0, 2.4}, 1.0, CornerSource::detected});
  CornerSet out = filter_corners(in, contour, 5.0);
  REQUIRE(out.corners.size() == 1);
  CHECK(out.corners[0].position == Point2{8.5, 8.5});

  // Everything far: empty result.
  CornerSet far;
  far.corners.push_back({{30.0, 30.0}, 1.0, CornerSource::detected});
  CHECK(filter_corners(far, contour, 5.0).corners.empty());
}

TEST_CASE("filtering never increases the corner count (monotone)") {
  Rng rng(13);
  Grid mask = rect_mask({32, 32}, 8, 20, 8, 20);
  Contour contour = extract_contour(mask);
  for (int trial = 0; trial < 30; ++trial) {
    CornerSet in;
    const int n = rng.uniform_int(0, 10);
    for (int k = 0; k < n; ++k) {
      in.corners.push_back({{rng.uniform(0.0, 32.0), rng.uniform(0.0, 32.0)},
                            rng.uniform(0.5, 1.0),
                            CornerSource::detected});
    }
    const double d1 = rng.uniform(0.0, 8.0), d2 = rng.uniform(0.0, 8.0);
    CornerSet a = filter_corners(in, contour, std::min(d1, d2));
    CornerSet b = filter_corners(in, contour, std::max(d1, d2));
    CHECK(a.corners.size() <= b.corners.size());
    CHECK(b.corners.size() <= in.corners.size());
  }
}

TEST_CASE("augment_semantic adds nothing when corners are complete") {
  Polygon sq({{8.5, 8.5}, {24.5, 8.5}, {24.5, 24.5}, {8.5, 24.5}});
  RasterStack t = encode_targets(sq, {32, 32});
  Contour contour = extract_contour(t.mask);
  CornerSet detected = decode_corners(t.heatmap, t.offset_x, t.offset_y, 0.5);
  CornerSet out = augment_semantic(detected, contour, 5.0, 15.0);
  CHECK(out.corners.size() == detected.corners.size());

  // Infinite threshold: provably nothing to add.
  out = augment_semantic(detected, contour,
                         std::numeric_limits<double>::infinity(), 15.0);
  CHECK(out.corners.size() == detected.corners.size());
}

TEST_CASE("augment_semantic recovers a dropped reflex corner of an L-shape") {
  Polygon ell(
      {{8.5, 8.5}, {40.5, 8.5}, {40.5, 20.5}, {20.5, 20.5}, {20.5, 44.5},
       {8.5, 44.5}});
  RasterStack t = encode_targets(ell, {64, 64});
  const Point2 reflex{20.5, 20.5};
  // Drop the reflex corner's heatmap peak.
  t.heatmap.at(20, 20) = 0.0;

  Contour contour = extract_contour(t.mask);
  CornerSet detected = filter_corners(
      decode_corners(t.heatmap, t.offset_x, t.offset_y, 0.5), contour, 5.0);
  CHECK(detected.corners.size() == 5);
  CornerSet augmented = augment_semantic(detected, contour, 5.0, 15.0);
  REQUIRE(augmented.corners.size() == 6);
  const Corner& added = augmented.corners.back();
  CHECK(added.source == CornerSource::semantic);
  CHECK(added.confidence == kSemanticConfidence);
  CHECK(distance(added.position, reflex) <= 1.5);
}

TEST_CASE("order_corners sorts by contour arc length") {
  Polygon sq({{8.5, 8.5}, {24.5, 8.5}, {24.5, 24.5}, {8.5, 24.5}});
  RasterStack t = encode_targets(sq, {32, 32});
  Contour contour = extract_contour(t.mask);

  CornerSet shuffled;
  shuffled.corners.push_back({{24.5, 24.5}, 1.0, CornerSource::detected});
  shuffled.corners.push_back({{8.5, 8.5}, 1.0, CornerSource::detected});
  shuffled.corners.push_back({{8.5, 24.5}, 1.0, CornerSource::detected});
  shuffled.corners.push_back({{24.5, 8.5}, 1.0, CornerSource::detected});

  InitResult r = order_corners(shuffled, contour);
  CHECK_FALSE(r.fallback);
  CHECK(r.score == doctest::Approx(1.0));
  REQUIRE(r.polygon.size() == 4);
  CHECK(signed_area(r.polygon) == doctest::Approx(16.0 * 16.0).epsilon(1e-9));
  CHECK(polygon_iou(r.polygon, sq) == doctest::Approx(1.0).epsilon(1e-9));
  // CCW contour order, wherever the cycle starts.
  CHECK(is_simple(r.polygon));
}

TEST_CASE("order_corners falls back to the simplified contour") {
  Polygon sq({{8.5, 8.5}, {24.5, 8.5}, {24.5, 24.5}, {8.5, 24.5}});
  RasterStack t = encode_targets(sq, {32, 32});
  Contour contour = extract_contour(t.mask);

  CornerSet two;
  two.corners.push_back({{8.5, 8.5}, 1.0, CornerSource::detected});
  two.corners.push_back({{24.5, 24.5}, 1.0, CornerSource::detected});
  InitResult r = order_corners(two, contour);
  CHECK(r.fallback);
  CHECK(r.polygon.size() >= 3);
  // The simplified contour still covers the square tightly.
  CHECK(polygon_iou(r.polygon, sq) > 0.8);
}

TEST_CASE("initialize full pipeline on a clean scene") {
  Polygon ell(
      {{8.25, 8.75}, {40.5, 8.5}, {40.25, 20.5}, {20.5, 20.25}, {20.75, 44.5},
       {8.5, 44.25}});
  RasterStack t = encode_targets(ell, {64, 64});
  InitOutcome out = initialize(t, InitConfig{});
  CHECK_FALSE(out.result.fallback);
  REQUIRE(out.result.polygon.size() == 6);
  CHECK(polis(out.result.polygon, ell) < 1e-9);
  CHECK(out.result.score == doctest::Approx(1.0));
}

TEST_CASE("initialize falls back on an empty heatmap") {
  Polygon sq({{8.5, 8.5}, {24.5, 8.5}, {24.5, 24.5}, {8.5, 24.5}});
  RasterStack t = encode_targets(sq, {32, 32});
  t.heatmap = Grid(t.size);  // no detections at all
  InitOutcome out = initialize(t, InitConfig{});
  // The polygon is rebuilt purely from semantic (contour-curvature) corners.
  CHECK(out.detected.corners.empty());
  CHECK(out.augmented.corners.size() >= 3);
  for (const Corner& c : out.augmented.corners) {
    CHECK(c.source == CornerSource::semantic);
  }
  CHECK(out.result.score == doctest::Approx(kSemanticConfidence));
  CHECK(polygon_iou(out.result.polygon, sq) > 0.8);
}
