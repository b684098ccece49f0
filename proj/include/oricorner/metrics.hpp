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

#ifndef ORICORNER_METRICS_HPP
#define ORICORNER_METRICS_HPP

#include <vector>

#include "oricorner/geom.hpp"

namespace oricorner {

struct InstancePrediction {
  int id = 0;
  Polygon polygon;
  double score = 1.0;
};

// Symmetric mean vertex-to-boundary distance (boundary polyline
// interpretation): 1/(2 N_P) sum_p d(p, dQ) + 1/(2 N_Q) sum_q d(q, dP).
double polis(const Polygon& p, const Polygon& q);

// IoU discounted by the relative vertex-count difference:
// IoU(P,Q) * (1 - |N_P - N_Q| / (N_P + N_Q)).
double ciou(const Polygon& p, const Polygon& q, int iou_resolution = 8);

struct MatchEntry {
  int pred_index = 0;
  int gt_index = 0;
  double iou = 0.0;
};

// Greedy score-descending matching against unmatched ground truth with the
// highest IoU >= iou_thresh; ties broken toward the smaller gt index.
std::vector<MatchEntry> match_instances(
    const std::vector<InstancePrediction>& preds,
    const std::vector<Polygon>& gts, double iou_thresh);

struct EvalReport {
  double ap = 0.0;    // mean AP over IoU thresholds 0.50:0.05:0.95
  double ar = 0.0;    // mean max recall over the same thresholds
  double ap50 = 0.0;  // AP at IoU 0.5
  double mean_polis = 0.0;  // over pairs matched at IoU >= 0.5
  double mean_ciou = 0.0;
  struct PerInstance {
    int scene = 0;
    int gt_index = 0;
    bool matched = false;  // at IoU 0.5
    double polis = 0.0;    // defined only when matched
    double ciou = 0.0;
  };
  std::vector<PerInstance> per_instance;
  long num_gt = 0;
  long num_pred = 0;
};

// COCO-style single-category protocol: per-scene greedy matching per
// threshold, predictions pooled across scenes by score, 101-point AP
// interpolation, maxDets = 100.  Throws UndefinedMetricError when there is no
// ground truth at all.
EvalReport ap_ar(const std::vector<std::vector<InstancePrediction>>& preds,
                 const std::vector<std::vector<Polygon>>& gts);

}  // namespace oricorner

#endif  // ORICORNER_METRICS_HPP
