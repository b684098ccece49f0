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

#include "oricorner/encoder.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "oricorner/errors.hpp"

namespace oricorner {

EncodedMask encode_mask(const Polygon& poly, GridSize size) {
  EncodedMask out{Grid(size), true};
  for (int i = 0; i < size.height; ++i) {
    for (int j = 0; j < size.width; ++j) {
      const Point2 center{j + 0.5, i + 0.5};
      if (point_in_polygon(center, poly.vertices())) {
        out.grid.at(i, j) = 1.0;
        out.degenerate = false;
      }
    }
  }
  return out;
}

EncodedCorners encode_corners(const Polygon& poly, GridSize size) {
  EncodedCorners out{Grid(size), Grid(size), Grid(size)};
  for (const Point2& v : poly.vertices()) {
    const int j = static_cast<int>(std::floor(v.x));
    const int i = static_cast<int>(std::floor(v.y));
    if (i < 0 || i >= size.height || j < 0 || j >= size.width) {
      throw VertexCollisionError("encode_corners: vertex outside grid at (" +
                                 std::to_string(v.x) + ", " +
                                 std::to_string(v.y) + ")");
    }
    if (out.heatmap.at(i, j) != 0.0) {
      throw VertexCollisionError("encode_corners: two vertices in cell (" +
                                 std::to_string(i) + ", " + std::to_string(j) +
                                 ")");
    }
    out.heatmap.at(i, j) = 1.0;
    out.offset_x.at(i, j) = v.x - (j + 0.5);
    out.offset_y.at(i, j) = v.y - (i + 0.5);
  }
  return out;
}

namespace {

Point2 unit_or_zero(Point2 v) {
  const double n = norm(v);
  if (n < 1e-12) return {0.0, 0.0};
  return v / n;
}

}  // namespace

EncodedOrientation encode_orientation(const Polygon& poly, GridSize size) {
  EncodedOrientation out{Grid(size), Grid(size), Grid(size), Grid(size),
                         Grid(size)};
  const int n = poly.size();
  for (int i = 0; i < size.height; ++i) {
    for (int j = 0; j < size.width; ++j) {
      const Point2 c{j + 0.5, i + 0.5};
      const BoundaryProjection bp = point_to_polygon_boundary(c, poly);
      if (bp.distance > kEdgeBand) continue;

      // Nearest vertex; ties resolved toward the smaller index.
      int vk = 0;
      double vd = std::numeric_limits<double>::infinity();
      for (int k = 0; k < n; ++k) {
        const double d = distance(c, poly[k]);
        if (d < vd) {
          vd = d;
          vk = k;
        }
      }

      Point2 ccw, cw;
      if (vd <= kCornerRadius) {
        // Corner region: tangents of the two edges meeting at vertex vk.
        ccw = unit_or_zero(poly.at_cyclic(vk + 1) - poly[vk]);
        cw = unit_or_zero(poly.at_cyclic(vk - 1) - poly[vk]);
      } else {
        // Edge region: tangent of the nearest edge, both ways.
        const Point2 a = poly[bp.edge];
        const Point2 b = poly.at_cyclic(bp.edge + 1);
        ccw = unit_or_zero(b - a);
        cw = ccw * -1.0;
      }
      out.edge_mask.at(i, j) = 1.0;
      out.occw_cos.at(i, j) = ccw.x;
      out.occw_sin.at(i, j) = ccw.y;
      out.ocw_cos.at(i, j) = cw.x;
      out.ocw_sin.at(i, j) = cw.y;
    }
  }
  return out;
}

RasterStack encode_targets(const Polygon& poly, GridSize size) {
  RasterStack stack(size);
  EncodedMask m = encode_mask(poly, size);
  EncodedCorners c = encode_corners(poly, size);
  EncodedOrientation o = encode_orientation(poly, size);
  stack.mask = std::move(m.grid);
  stack.heatmap = std::move(c.heatmap);
  stack.offset_x = std::move(c.offset_x);
  stack.offset_y = std::move(c.offset_y);
  stack.ocw_cos = std::move(o.ocw_cos);
  stack.ocw_sin = std::move(o.ocw_sin);
  stack.occw_cos = std::move(o.occw_cos);
  stack.occw_sin = std::move(o.occw_sin);
  stack.edge_mask = std::move(o.edge_mask);
  return stack;
}

}  // namespace oricorner
