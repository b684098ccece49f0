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

#ifndef ORICORNER_GEOM_HPP
#define ORICORNER_GEOM_HPP

#include <cmath>
#include <span>
#include <vector>

namespace oricorner {

// Grid convention used everywhere: x = column, y = row, origin at the
// top-left corner of the grid; cell (i, j) spans [j, j+1) x [i, i+1) and has
// center (j + 0.5, i + 0.5).

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  Point2 operator+(Point2 o) const { return {x + o.x, y + o.y}; }
  Point2 operator-(Point2 o) const { return {x - o.x, y - o.y}; }
  Point2 operator*(double s) const { return {x * s, y * s}; }
  Point2 operator/(double s) const { return {x / s, y / s}; }
  Point2& operator+=(Point2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  bool operator==(const Point2&) const = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

// Minimum spacing between consecutive vertices.
inline constexpr double kDupEps = 1e-6;

// Ordered vertex ring, first vertex not repeated.  Construction removes
// consecutive duplicates (closer than kDupEps) and normalizes the winding so
// that the signed area is positive (counter-clockwise).  Throws
// std::invalid_argument when fewer than 3 distinct vertices remain or a
// coordinate is not finite.
class Polygon {
 public:
  explicit Polygon(std::vector<Point2> vertices);

  const std::vector<Point2>& vertices() const { return vertices_; }
  int size() const { return static_cast<int>(vertices_.size()); }
  const Point2& operator[](int i) const { return vertices_[i]; }
  // Cyclic access, i may be any integer.
  const Point2& at_cyclic(int i) const {
    int n = size();
    return vertices_[((i % n) + n) % n];
  }

 private:
  std::vector<Point2> vertices_;
};

double signed_area(std::span<const Point2> ring);
double signed_area(const Polygon& p);

struct SegmentProjection {
  double distance = 0.0;
  Point2 foot;
  double t = 0.0;  // clamped parameter along [a, b]
};

// Distance from p to the closed segment [a, b]; degenerate segments fall back
// to point distance.
SegmentProjection project_point_segment(Point2 p, Point2 a, Point2 b);

struct BoundaryProjection {
  double distance = 0.0;
  Point2 point;
  int edge = 0;  // edge index i spans vertex i -> vertex i+1
  double t = 0.0;
};

BoundaryProjection point_to_polygon_boundary(Point2 p, const Polygon& poly);

// Interior angle at vertex v with neighbors prev/next, in degrees in
// [0, 360); reflex vertices of a CCW polygon yield > 180, collinear triples
// exactly 180.
double interior_angle(Point2 prev, Point2 v, Point2 next);

// Gradient of interior_angle (degrees per pixel) with respect to the three
// points.
void interior_angle_grad(Point2 prev, Point2 v, Point2 next, Point2* g_prev,
                         Point2* g_v, Point2* g_next);

// One interior angle per vertex; sums to (n-2)*180 for simple polygons.
std::vector<double> interior_angles(const Polygon& poly);

// Even-odd rule; points exactly on the boundary are classified by the ray
// crossing rule, which is consistent between calls.
bool point_in_polygon(Point2 p, std::span<const Point2> ring);

// Intersection over union by even-odd scanline rasterization over the union
// bounding box, `resolution` samples per pixel per axis.  Deterministic;
// disjoint bounding boxes short-circuit to 0.
double polygon_iou(const Polygon& p, const Polygon& q, int resolution = 8);

bool is_simple(const Polygon& poly);

struct Box {
  double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;
};

Box bounding_box(const Polygon& poly);

Polygon translated(const Polygon& poly, Point2 t);
Polygon rotated(const Polygon& poly, Point2 center, double degrees);

}  // namespace oricorner

#endif  // ORICORNER_GEOM_HPP
