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

#include "oricorner/encoder.hpp"
#include "oricorner/metrics.hpp"
#include "oricorner/refine.hpp"
#include "oricorner/rng.hpp"

using namespace oricorner;

namespace {

Polygon perturbed(const Polygon& p, Rng& rng, double amp) {
  std::vector<Point2> v = p.vertices();
  for (Point2& q : v) {
    q.x += rng.uniform(-amp, amp);
    q.y += rng.uniform(-amp, amp);
  }
  return Polygon(v);
}

double mean_angle_deviation(const Polygon& p) {
  double sum = 0.0;
  for (double a : interior_angles(p)) {
    const double m = std::fmod(a, 90.0);
    sum += std::min(m, 90.0 - m);
  }
  return sum / p.size();
}

}  // namespace

TEST_CASE("refine_energy at ground truth on clean rasters") {
  Polygon sq({{10.25, 10.75}, {30.5, 10.75}, {30.5, 30.5}, {10.25, 30.5}});
  RasterStack t = encode_targets(sq, {64, 64});
  RefineConfig cfg;
  Energy e = refine_energy(sq, t, cfg);
  CHECK(e.heat_attraction <= 1e-3);
  CHECK(e.orientation_alignment <= 1e-3);
  CHECK(e.orthogonality <= 1e-6);  // rectilinear ground truth

  // Translated 3 px off the truth: strictly worse.
  Energy off = refine_energy(translated(sq, {3, 0}), t, cfg);
  CHECK(off.total > e.total);

  // All weights zero: zero energy.
  RefineConfig zero = cfg;
  zero.mu_heat = zero.mu_ori = zero.mu_ortho = 0.0;
  CHECK(refine_energy(sq, t, zero).total == 0.0);
}

TEST_CASE("refine is stationary at ground truth on clean rasters") {
  Polygon sq({{10.25, 10.75}, {30.5, 10.75}, {30.5, 30.5}, {10.25, 30.5}});
  RasterStack t = encode_targets(sq, {64, 64});
  RefineResult r = refine(sq, t, RefineConfig{});
  REQUIRE(r.polygon.size() == sq.size());
  for (int k = 0; k < sq.size(); ++k) {
    CHECK(distance(r.polygon[k], sq[k]) < 1e-3);
  }
}

TEST_CASE("refine improves PoLiS for perturbed polygons (100 seeds)") {
  Polygon sq({{12.3, 12.7}, {32.6, 12.4}, {32.2, 32.5}, {12.6, 32.1}});
  RasterStack t = encode_targets(sq, {64, 64});
  int improved = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    Polygon noisy = perturbed(sq, rng, 1.0);
    RefineResult r = refine(noisy, t, RefineConfig{});
    const double before = polis(noisy, sq);
    const double after = polis(r.polygon, sq);
    if (after < before || before < 1e-12) ++improved;
  }
  CHECK(improved == 100);
}

TEST_CASE("refine trace is monotonically non-increasing") {
  Polygon sq({{12.3, 12.7}, {32.6, 12.4}, {32.2, 32.5}, {12.6, 32.1}});
  RasterStack t = encode_targets(sq, {64, 64});
  for (uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(1000 + seed);
    Polygon noisy = perturbed(sq, rng, 1.0);
    RefineResult r = refine(noisy, t, RefineConfig{});
    REQUIRE(r.trace.size() >= 2);
    for (size_t k = 1; k < r.trace.size(); ++k) {
      CHECK(r.trace[k].total <= r.trace[k - 1].total + 1e-9);
    }
  }
}

TEST_CASE("orthogonality weight straightens noisy rectilinear polygons") {
  Polygon sq({{12.0, 12.0}, {32.0, 12.0}, {32.0, 32.0}, {12.0, 32.0}});
  RasterStack t = encode_targets(sq, {64, 64});
  int improved = 0;
  int applicable = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(7000 + seed);
    Polygon noisy = perturbed(sq, rng, 0.8);
    const double before = mean_angle_deviation(noisy);
    if (before < 1e-6) continue;
    ++applicable;
    RefineConfig cfg;
    cfg.mu_heat = 0.0;  // isolate the orthogonality term
    cfg.mu_ori = 0.0;
    cfg.mu_ortho = 1.0;
    RefineResult r = refine(noisy, t, cfg);
    if (mean_angle_deviation(r.polygon) < before) ++improved;
  }
  CHECK(applicable > 90);
  CHECK(improved == applicable);
}

TEST_CASE("refine is equivariant under grid translation") {
  // Shift polygon and rasters by a whole number of cells: identical result
  // up to the same shift.
  Polygon sq({{10.3, 10.6}, {26.2, 10.4}, {26.5, 26.3}, {10.4, 26.6}});
  RasterStack t0 = encode_targets(sq, {64, 64});
  const Point2 shift{7.0, 5.0};
  Polygon sq1 = translated(sq, shift);
  RasterStack t1 = encode_targets(sq1, {64, 64});

  Rng rng(55);
  Polygon noisy = perturbed(sq, rng, 0.7);
  RefineResult a = refine(noisy, t0, RefineConfig{});
  RefineResult b = refine(translated(noisy, shift), t1, RefineConfig{});
  REQUIRE(a.polygon.size() == b.polygon.size());
  // Rounding differs between the two grids, so equivariance holds up to the
  // accumulated floating-point drift of the descent, not bit-exactly.
  for (int k = 0; k < a.polygon.size(); ++k) {
    CHECK(distance(b.polygon[k], a.polygon[k] + shift) < 1e-2);
  }
}

TEST_CASE("refine preserves vertex count and simplicity") {
  Polygon ell(
      {{8.25, 8.75}, {40.5, 8.5}, {40.25, 20.5}, {20.5, 20.25}, {20.75, 44.5},
       {8.5, 44.25}});
  RasterStack t = encode_targets(ell, {64, 64});
  for (uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(300 + seed);
    Polygon noisy = perturbed(ell, rng, 1.0);
    RefineResult r = refine(noisy, t, RefineConfig{});
    CHECK(r.polygon.size() == noisy.size());
    CHECK(is_simple(r.polygon));
  }
}

TEST_CASE("zero iterations return the input unchanged") {
  Polygon sq({{12.3, 12.7}, {32.6, 12.4}, {32.2, 32.5}, {12.6, 32.1}});
  RasterStack t = encode_targets(sq, {64, 64});
  RefineConfig cfg;
  cfg.iterations = 0;
  RefineResult r = refine(sq, t, cfg);
  CHECK(r.polygon.vertices() == sq.vertices());
  CHECK(r.trace.size() == 1);
}
