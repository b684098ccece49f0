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

#include "oricorner/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "oricorner/errors.hpp"

namespace oricorner {

double polis(const Polygon& p, const Polygon& q) {
  double sum_p = 0.0;
  for (const Point2& v : p.vertices()) {
    sum_p += point_to_polygon_boundary(v, q).distance;
  }
  double sum_q = 0.0;
  for (const Point2& v : q.vertices()) {
    sum_q += point_to_polygon_boundary(v, p).distance;
  }
  return sum_p / (2.0 * p.size()) + sum_q / (2.0 * q.size());
}

double ciou(const Polygon& p, const Polygon& q, int iou_resolution) {
  const double np = p.size();
  const double nq = q.size();
  const double d = std::abs(np - nq) / (np + nq);
  return polygon_iou(p, q, iou_resolution) * (1.0 - d);
}

namespace {

constexpr int kNumThresholds = 10;  // 0.50 : 0.05 : 0.95
constexpr int kMaxDets = 100;

double threshold(int t) { return 0.50 + 0.05 * t; }

// Score-descending order of predictions; ties keep the input order.
std::vector<int> score_order(const std::vector<InstancePrediction>& preds) {
  std::vector<int> order(preds.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return preds[a].score > preds[b].score;
  });
  if (order.size() > kMaxDets) order.resize(kMaxDets);
  return order;
}

}  // namespace

std::vector<MatchEntry> match_instances(
    const std::vector<InstancePrediction>& preds,
    const std::vector<Polygon>& gts, double iou_thresh) {
  std::vector<std::vector<double>> iou(preds.size(),
                                       std::vector<double>(gts.size(), 0.0));
  for (size_t p = 0; p < preds.size(); ++p) {
    for (size_t g = 0; g < gts.size(); ++g) {
      iou[p][g] = polygon_iou(preds[p].polygon, gts[g]);
    }
  }
  const std::vector<int> order = score_order(preds);
  std::vector<int> match(preds.size(), -1);
  std::vector<bool> gt_used(gts.size(), false);
  for (int p : order) {
    int best = -1;
    double best_iou = -1.0;
    for (size_t g = 0; g < gts.size(); ++g) {
      if (gt_used[g]) continue;
      if (iou[p][g] >= iou_thresh && iou[p][g] > best_iou) {
        best_iou = iou[p][g];
        best = static_cast<int>(g);
      }
    }
    if (best >= 0) {
      gt_used[best] = true;
      match[p] = best;
    }
  }
  std::vector<MatchEntry> out;
  for (size_t p = 0; p < preds.size(); ++p) {
    if (match[p] >= 0) {
      out.push_back({static_cast<int>(p), match[p], iou[p][match[p]]});
    }
  }
  return out;
}

EvalReport ap_ar(const std::vector<std::vector<InstancePrediction>>& preds,
                 const std::vector<std::vector<Polygon>>& gts) {
  if (preds.size() != gts.size()) {
    throw std::invalid_argument("ap_ar: scene count mismatch");
  }
  EvalReport report;
  for (const auto& g : gts) report.num_gt += static_cast<long>(g.size());
  if (report.num_gt == 0) {
    throw UndefinedMetricError("ap_ar: no ground-truth instances");
  }
  for (const auto& p : preds) report.num_pred += static_cast<long>(p.size());

  struct PooledDet {
    double score;
    int scene;
    int index;
    bool tp[kNumThresholds];
  };
  std::vector<PooledDet> pooled;
  long matched_gt[kNumThresholds] = {0};

  for (size_t s = 0; s < preds.size(); ++s) {
    const auto& scene_preds = preds[s];
    const auto& scene_gts = gts[s];
    std::vector<std::vector<double>> iou(
        scene_preds.size(), std::vector<double>(scene_gts.size(), 0.0));
    for (size_t p = 0; p < scene_preds.size(); ++p) {
      for (size_t g = 0; g < scene_gts.size(); ++g) {
        iou[p][g] = polygon_iou(scene_preds[p].polygon, scene_gts[g]);
      }
    }
    const std::vector<int> order = score_order(scene_preds);

    std::vector<std::vector<int>> match_per_t(kNumThresholds);
    for (int t = 0; t < kNumThresholds; ++t) {
      std::vector<int> match(scene_preds.size(), -1);
      std::vector<bool> gt_used(scene_gts.size(), false);
      for (int p : order) {
        int best = -1;
        double best_iou = -1.0;
        for (size_t g = 0; g < scene_gts.size(); ++g) {
          if (gt_used[g]) continue;
          if (iou[p][g] >= threshold(t) && iou[p][g] > best_iou) {
            best_iou = iou[p][g];
            best = static_cast<int>(g);
          }
        }
        if (best >= 0) {
          gt_used[best] = true;
          match[p] = best;
          ++matched_gt[t];
        }
      }
      match_per_t[t] = std::move(match);
    }

    for (int p : order) {
      PooledDet det{scene_preds[p].score, static_cast<int>(s), p, {}};
      for (int t = 0; t < kNumThresholds; ++t) {
        det.tp[t] = match_per_t[t][p] >= 0;
      }
      pooled.push_back(det);
    }

    // Vector metrics over pairs matched at IoU 0.5.
    std::vector<int> gt_to_pred(scene_gts.size(), -1);
    for (size_t p = 0; p < scene_preds.size(); ++p) {
      if (match_per_t[0][p] >= 0) gt_to_pred[match_per_t[0][p]] = static_cast<int>(p);
    }
    for (size_t g = 0; g < scene_gts.size(); ++g) {
      EvalReport::PerInstance pi;
      pi.scene = static_cast<int>(s);
      pi.gt_index = static_cast<int>(g);
      if (gt_to_pred[g] >= 0) {
        pi.matched = true;
        pi.polis = polis(scene_preds[gt_to_pred[g]].polygon, scene_gts[g]);
        pi.ciou = ciou(scene_preds[gt_to_pred[g]].polygon, scene_gts[g]);
      }
      report.per_instance.push_back(pi);
    }
  }

  std::stable_sort(pooled.begin(), pooled.end(),
                   [](const PooledDet& a, const PooledDet& b) {
                     return a.score > b.score;
                   });

  double ap_sum = 0.0;
  for (int t = 0; t < kNumThresholds; ++t) {
    std::vector<double> precision, recall;
    long tp_cum = 0;
    for (size_t k = 0; k < pooled.size(); ++k) {
      if (pooled[k].tp[t]) ++tp_cum;
      precision.push_back(static_cast<double>(tp_cum) /
                          static_cast<double>(k + 1));
      recall.push_back(static_cast<double>(tp_cum) /
                       static_cast<double>(report.num_gt));
    }
    // 101-point interpolation with the precision envelope.
    double ap_t = 0.0;
    for (int r = 0; r <= 100; ++r) {
      const double target = r / 100.0;
      double best = 0.0;
      for (size_t k = 0; k < pooled.size(); ++k) {
        if (recall[k] >= target) best = std::max(best, precision[k]);
      }
      ap_t += best;
    }
    ap_t /= 101.0;
    ap_sum += ap_t;
    if (t == 0) report.ap50 = ap_t;
  }
  report.ap = ap_sum / kNumThresholds;

  double ar_sum = 0.0;
  for (int t = 0; t < kNumThresholds; ++t) {
    ar_sum += static_cast<double>(matched_gt[t]) /
              static_cast<double>(report.num_gt);
  }
  report.ar = ar_sum / kNumThresholds;

  long matched = 0;
  double polis_sum = 0.0, ciou_sum = 0.0;
  for (const auto& pi : report.per_instance) {
    if (pi.matched) {
      ++matched;
      polis_sum += pi.polis;
      ciou_sum += pi.ciou;
    }
  }
  if (matched > 0) {
    report.mean_polis = polis_sum / matched;
    report.mean_ciou = ciou_sum / matched;
  }
  return report;
}

}  // namespace oricorner
