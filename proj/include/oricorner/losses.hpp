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

#ifndef ORICORNER_LOSSES_HPP
#define ORICORNER_LOSSES_HPP

#include <optional>
#include <vector>

#include "oricorner/geom.hpp"
#include "oricorner/raster.hpp"

namespace oricorner {

// Predictions are clamped into [kLogEps, 1 - kLogEps] before the logs.
inline constexpr double kLogEps = 1e-7;
// Mutual-nearest-neighbor cap for the bi-projection vertex matching (px).
inline constexpr double kDefaultMatchRadius = 3.0;
// Interpolated orientation samples shorter than this are treated as outside
// the field and contribute the neutral per-term value 1.
inline constexpr double kOriNormEps = 1e-6;

struct LossWeights {
  double w_pos = 1.0;
  double lambda_heat = 1.0;
  double lambda_offset = 1.0;
  double lambda_orient = 1.0;
  double lambda_poly = 1.0;
  double lambda_cons = 0.1;
  // Orthogonality is measured in degrees; weight is per degree.
  double lambda_ortho = 0.01 * 3.14159265358979323846 / 180.0;
};

// Weighted binary cross-entropy over all pixels.
double heatmap_loss(const Grid& pred, const Grid& target, double w_pos);
// d loss / d pred, same shape as pred (zero where the clamp is active).
Grid heatmap_loss_grad(const Grid& pred, const Grid& target, double w_pos);

// Smooth-L1, averaged over the valid domain (all entries when no mask is
// given).  Throws DomainEmptyError when nothing is valid.
double smooth_l1(const Grid& pred, const Grid& target,
                 const Grid* valid = nullptr);
Grid smooth_l1_grad(const Grid& pred, const Grid& target,
                    const Grid* valid = nullptr);

struct MatchResult {
  struct VertexPair {
    int pred_index = 0;
    int gt_index = 0;
    double dist = 0.0;
  };
  enum class ExtraSide { pred, gt };
  struct Projection {
    ExtraSide side = ExtraSide::pred;
    int vertex = 0;  // index in its own polygon
    int edge = 0;    // nearest edge on the other polygon
    double t = 0.0;
    Point2 foot;
    double dist = 0.0;
  };
  std::vector<VertexPair> matched;   // S_ic
  std::vector<Projection> extra;     // S_ac
  int normalizer = 1;                // max(N_pred, N_gt)
};

// Mutual nearest neighbors within r_match go to S_ic; every remaining vertex
// of either polygon is projected onto the other polygon's nearest edge.
MatchResult biprojection_match(const Polygon& pred, const Polygon& gt,
                               double r_match = kDefaultMatchRadius);

// Eq.-value of the matching as computed by biprojection_match.
double biprojection_loss(const MatchResult& match);

// Re-evaluates the loss for (possibly perturbed) polygons while holding the
// match structure fixed; projections are re-optimized along their fixed edge.
double biprojection_eval(const Polygon& pred, const Polygon& gt,
                         const MatchResult& match);

// Subgradient with respect to the predicted vertex coordinates, matching held
// fixed.
std::vector<Point2> biprojection_grad(const Polygon& pred, const Polygon& gt,
                                      const MatchResult& match);

// Mean over edges of 1 + <O_ccw(v_i), O_cw(v_{i+1})>, vectors bilinearly
// sampled from the field and renormalized; in [0, 2].
double orientation_consistency_loss(const Polygon& poly,
                                    const OrientationView& field);
std::vector<Point2> orientation_consistency_grad(const Polygon& poly,
                                                 const OrientationView& field);

// Mean circular distance (degrees) of the interior angles to the nearest of
// {0, 90, 180, 270}; in [0, 45].
double orthogonality_loss(const Polygon& poly);
std::vector<Point2> orthogonality_grad(const Polygon& poly);

struct LossParts {
  double heat = 0.0;
  double offset = 0.0;
  double orient = 0.0;
  double poly = 0.0;
  double cons = 0.0;
  double ortho = 0.0;
};

double total_loss(const LossParts& parts, const LossWeights& weights);

}  // namespace oricorner

#endif  // ORICORNER_LOSSES_HPP
