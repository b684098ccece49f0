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

#include "oricorner/raster.hpp"

#include <algorithm>
#include <cmath>

namespace oricorner {

namespace {

struct BilinearCell {
  int i0, j0;
  double fx, fy;
  bool clamped_x, clamped_y;
};

BilinearCell locate(const Grid& g, double x, double y) {
  BilinearCell c{};
  double gx = x - 0.5;
  double gy = y - 0.5;
  c.clamped_x = gx <= 0.0 || gx >= g.width() - 1;
  c.clamped_y = gy <= 0.0 || gy >= g.height() - 1;
  gx = std::clamp(gx, 0.0, static_cast<double>(g.width() - 1));
  gy = std::clamp(gy, 0.0, static_cast<double>(g.height() - 1));
  c.j0 = std::min(static_cast<int>(std::floor(gx)), g.width() - 2);
  c.i0 = std::min(static_cast<int>(std::floor(gy)), g.height() - 2);
  if (g.width() == 1) c.j0 = 0;
  if (g.height() == 1) c.i0 = 0;
  c.fx = gx - c.j0;
  c.fy = gy - c.i0;
  return c;
}

}  // namespace

double bilinear(const Grid& g, double x, double y) {
  return bilinear_with_grad(g, x, y, nullptr);
}

double bilinear_with_grad(const Grid& g, double x, double y, Point2* grad) {
  const BilinearCell c = locate(g, x, y);
  const int i1 = std::min(c.i0 + 1, g.height() - 1);
  const int j1 = std::min(c.j0 + 1, g.width() - 1);
  const double v00 = g.at(c.i0, c.j0);
  const double v01 = g.at(c.i0, j1);
  const double v10 = g.at(i1, c.j0);
  const double v11 = g.at(i1, j1);
  const double top = v00 * (1.0 - c.fx) + v01 * c.fx;
  const double bot = v10 * (1.0 - c.fx) + v11 * c.fx;
  if (grad != nullptr) {
    const double dx = (v01 - v00) * (1.0 - c.fy) + (v11 - v10) * c.fy;
    const double dy = bot - top;
    grad->x = c.clamped_x ? 0.0 : dx;
    grad->y = c.clamped_y ? 0.0 : dy;
  }
  return top * (1.0 - c.fy) + bot * c.fy;
}

}  // namespace oricorner
