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

#ifndef ORICORNER_RASTER_HPP
#define ORICORNER_RASTER_HPP

#include <cassert>
#include <stdexcept>
#include <vector>

#include "oricorner/geom.hpp"

namespace oricorner {

struct GridSize {
  int height = 0;
  int width = 0;

  bool operator==(const GridSize&) const = default;
};

// Row-major H x W grid of doubles.  at(i, j): i = row, j = column.
class Grid {
 public:
  Grid() = default;
  Grid(int height, int width, double fill = 0.0)
      : h_(height), w_(width), data_(static_cast<size_t>(height) * width, fill) {
    if (height <= 0 || width <= 0) throw std::invalid_argument("Grid: bad size");
  }
  explicit Grid(GridSize s, double fill = 0.0) : Grid(s.height, s.width, fill) {}

  int height() const { return h_; }
  int width() const { return w_; }
  double& at(int i, int j) {
    assert(i >= 0 && i < h_ && j >= 0 && j < w_);
    return data_[static_cast<size_t>(i) * w_ + j];
  }
  double at(int i, int j) const {
    assert(i >= 0 && i < h_ && j >= 0 && j < w_);
    return data_[static_cast<size_t>(i) * w_ + j];
  }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  bool operator==(const Grid&) const = default;

 private:
  int h_ = 0;
  int w_ = 0;
  std::vector<double> data_;
};

// Bilinear sample of a grid at continuous point (x, y) under the cell-center
// convention; coordinates are clamped to the grid of cell centers.
double bilinear(const Grid& g, double x, double y);

// Sample plus spatial gradient (d/dx, d/dy).  The gradient is zero in a
// clamped dimension and takes the interior branch on cell boundaries.
double bilinear_with_grad(const Grid& g, double x, double y, Point2* grad);

// Per-instance supervision / prediction grids.  Orientation channel order:
// (cos cw, sin cw, cos ccw, sin ccw); all four are zero off edge_mask.
struct RasterStack {
  GridSize size;
  Grid mask;
  Grid heatmap;
  Grid offset_x;
  Grid offset_y;
  Grid ocw_cos;
  Grid ocw_sin;
  Grid occw_cos;
  Grid occw_sin;
  Grid edge_mask;

  explicit RasterStack(GridSize s)
      : size(s),
        mask(s),
        heatmap(s),
        offset_x(s),
        offset_y(s),
        ocw_cos(s),
        ocw_sin(s),
        occw_cos(s),
        occw_sin(s),
        edge_mask(s) {}

  bool operator==(const RasterStack&) const = default;
};

// Lightweight view of the four orientation channels of a RasterStack (or any
// hand-built field); used by the orientation consistency loss and refiner.
struct OrientationView {
  const Grid* cw_cos = nullptr;
  const Grid* cw_sin = nullptr;
  const Grid* ccw_cos = nullptr;
  const Grid* ccw_sin = nullptr;

  OrientationView(const Grid& a, const Grid& b, const Grid& c, const Grid& d)
      : cw_cos(&a), cw_sin(&b), ccw_cos(&c), ccw_sin(&d) {}
  explicit OrientationView(const RasterStack& r)
      : OrientationView(r.ocw_cos, r.ocw_sin, r.occw_cos, r.occw_sin) {}
};

}  // namespace oricorner

#endif  // ORICORNER_RASTER_HPP
