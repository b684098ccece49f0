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

#ifndef ORICORNER_ENCODER_HPP
#define ORICORNER_ENCODER_HPP

#include "oricorner/geom.hpp"
#include "oricorner/raster.hpp"

namespace oricorner {

// Band width (in cells) around the polygon boundary that receives
// orientation supervision.
inline constexpr double kEdgeBand = 1.0;
// Cells whose center lies within this radius of a polygon vertex take their
// orientation from that vertex's two incident edges, which keeps the stored
// field constant across the bilinear support of every vertex.
inline constexpr double kCornerRadius = 1.5;

struct EncodedMask {
  Grid grid;
  // True when no cell center fell inside the polygon.
  bool degenerate = false;
};

// Cell is 1 iff its center lies inside the polygon (even-odd rule).
EncodedMask encode_mask(const Polygon& poly, GridSize size);

struct EncodedCorners {
  Grid heatmap;   // binary: 1 on cells containing a vertex
  Grid offset_x;  // sub-cell offset of the vertex from the cell center
  Grid offset_y;
};

// Throws VertexCollisionError when two vertices land in the same cell.
EncodedCorners encode_corners(const Polygon& poly, GridSize size);

struct EncodedOrientation {
  Grid ocw_cos;
  Grid ocw_sin;
  Grid occw_cos;
  Grid occw_sin;
  Grid edge_mask;
};

// Supervises orientation on cells whose center is within kEdgeBand of the
// boundary.  Cells near a vertex store the tangents of that vertex's two
// incident edges (O_ccw along the outgoing edge, O_cw along the incoming one
// reversed); remaining band cells store the tangents of their nearest edge.
// All stored vectors are unit length; everything else is zero.
EncodedOrientation encode_orientation(const Polygon& poly, GridSize size);

// All targets in one stack.
RasterStack encode_targets(const Polygon& poly, GridSize size);

}  // namespace oricorner

#endif  // ORICORNER_ENCODER_HPP
