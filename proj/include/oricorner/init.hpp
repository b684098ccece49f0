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

#ifndef ORICORNER_INIT_HPP
#define ORICORNER_INIT_HPP

#include <optional>
#include <vector>

#include "oricorner/geom.hpp"
#include "oricorner/raster.hpp"

namespace oricorner {

enum class CornerSource { detected, semantic };

// Confidence assigned to corners recovered from the mask contour.
inline constexpr double kSemanticConfidence = 0.5;

struct Corner {
  Point2 position;
  double confidence = 0.0;
  CornerSource source = CornerSource::detected;
};

struct CornerSet {
  std::vector<Corner> corners;
};

// Closed CCW polyline of boundary cell centers with cumulative arc-length.
struct Contour {
  std::vector<Point2> points;
  std::vector<double> arc_length;  // arc_length[0] == 0, strictly increasing
  double perimeter = 0.0;
};

struct InitConfig {
  double delta_cor2cont = 5.0;
  double delta_sem2graph = 5.0;
  double tau_peak = 0.5;
  double angle_tol_sem = 15.0;  // degrees
};

// Cells >= tau that are strict 3x3 local maxima (ties broken toward smaller
// row, then column) become sub-pixel corners at center + offset.
CornerSet decode_corners(const Grid& heatmap, const Grid& offset_x,
                         const Grid& offset_y, double tau_peak);

// Moore boundary tracing over the largest 4-connected foreground component.
// Throws EmptyMaskError on an all-zero mask.
Contour extract_contour(const Grid& mask);

// Distance from a point to the closed contour polyline.
double contour_distance(const Contour& contour, Point2 p);
// Index of the nearest contour point (ties toward the smaller index).
int nearest_contour_point(const Contour& contour, Point2 p);

// Keeps corners within delta of the contour polyline.
CornerSet filter_corners(const CornerSet& corners, const Contour& contour,
                         double delta_cor2cont);

// Adds high-curvature contour points that lie further than delta_sem2graph
// from the polygon built from the corners so far (greedy, farthest first,
// polygon rebuilt after each insertion).
CornerSet augment_semantic(const CornerSet& corners, const Contour& contour,
                           double delta_sem2graph, double angle_tol_sem);

struct InitResult {
  Polygon polygon;
  bool fallback = false;  // Douglas-Peucker contour fallback was used
  double score = 0.0;     // mean corner confidence
};

// Orders corners by the arc-length of their nearest contour point; with fewer
// than 3 corners falls back to the simplified contour.
InitResult order_corners(const CornerSet& corners, const Contour& contour);

// Douglas-Peucker simplification of the closed contour.
std::vector<Point2> simplify_contour(const Contour& contour,
                                     double tolerance = 1.0);

struct InitOutcome {
  CornerSet detected;   // after decode + filter
  CornerSet augmented;  // after semantic augmentation
  Contour contour;
  InitResult result;
};

// Full pipeline: decode -> contour -> filter -> augment -> order.
InitOutcome initialize(const RasterStack& rasters, const InitConfig& cfg);

}  // namespace oricorner

#endif  // ORICORNER_INIT_HPP
