#include "fusim/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace fusim {

namespace {

constexpr double kConfidenceFloorForLog = 1e-12;

// Total order used to make clustering independent of input order.
bool canonical_less(const Detection& a, const Detection& b) {
  return std::tie(a.class_id, b.confidence, a.x1, a.y1, a.x2, a.y2) <
         std::tie(b.class_id, a.confidence, b.x1, b.y1, b.x2, b.y2);
}

double smooth_l1(double d) {
  const double a = std::abs(d);
  return a < 1.0 ? 0.5 * d * d : a - 0.5;
}

struct Cluster {
  int class_id{0};
  double weight_sum{0.0};
  double conf_sum{0.0};
  double conf_min{1.0};
  double conf_max{0.0};
  std::size_t count{0};
  // Confidence-weighted coordinate sums; the representative box is the
  // running weighted mean.
  double wx1{0.0}, wy1{0.0}, wx2{0.0}, wy2{0.0};
  // Unweighted sums, used when every member has confidence 0.
  double sx1{0.0}, sy1{0.0}, sx2{0.0}, sy2{0.0};

  void add(const Detection& d) {
    class_id = d.class_id;
    weight_sum += d.confidence;
    conf_sum += d.confidence;
    conf_min = std::min(conf_min, d.confidence);
    conf_max = std::max(conf_max, d.confidence);
    ++count;
    wx1 += d.confidence * d.x1;
    wy1 += d.confidence * d.y1;
    wx2 += d.confidence * d.x2;
    wy2 += d.confidence * d.y2;
    sx1 += d.x1;
    sy1 += d.y1;
    sx2 += d.x2;
    sy2 += d.y2;
  }

  Detection representative() const {
    Detection d;
    d.class_id = class_id;
    if (weight_sum > 0.0) {
      d.x1 = wx1 / weight_sum;
      d.y1 = wy1 / weight_sum;
      d.x2 = wx2 / weight_sum;
      d.y2 = wy2 / weight_sum;
    } else {
      const double n = static_cast<double>(count);
      d.x1 = sx1 / n;
      d.y1 = sy1 / n;
      d.x2 = sx2 / n;
      d.y2 = sy2 / n;
    }
    d.confidence = count > 0 ? conf_sum / static_cast<double>(count) : 0.0;
    return d;
  }
};

}  // namespace

void FusionParams::validate() const {
  if (!(iou_threshold > 0.0 && iou_threshold < 1.0)) {
    throw ValidationError("fusion iou_threshold must be in (0, 1)");
  }
  if (!(confidence_floor >= 0.0 && confidence_floor < 1.0)) {
    throw ValidationError("fusion confidence_floor must be in [0, 1)");
  }
}

void LossParams::validate() const {
  if (!(match_iou > 0.0 && match_iou <= 1.0)) {
    throw ValidationError("loss match_iou must be in (0, 1]");
  }
  if (!(miss_penalty >= 0.0)) throw ValidationError("loss miss_penalty must be >= 0");
  if (!(false_positive_penalty >= 0.0)) {
    throw ValidationError("loss false_positive_penalty must be >= 0");
  }
}

double iou(const Detection& a, const Detection& b) {
  const double ix1 = std::max(a.x1, b.x1);
  const double iy1 = std::max(a.y1, b.y1);
  const double ix2 = std::min(a.x2, b.x2);
  const double iy2 = std::min(a.y2, b.y2);
  const double iw = ix2 - ix1;
  const double ih = iy2 - iy1;
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  const double inter = iw * ih;
  const double uni = a.width() * a.height() + b.width() * b.height() - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

DetectionSet weighted_boxes_fusion(const std::vector<DetectionSet>& detection_lists,
                                   const FusionParams& params) {
  params.validate();

  DetectionSet pool;
  for (const auto& list : detection_lists) {
    validate_detections(list);
    pool.insert(pool.end(), list.begin(), list.end());
  }
  if (pool.empty()) return {};
  std::sort(pool.begin(), pool.end(), canonical_less);

  std::vector<Cluster> clusters;
  for (const auto& d : pool) {
    double best_iou = 0.0;
    Cluster* best = nullptr;
    for (auto& c : clusters) {
      if (c.class_id != d.class_id) continue;
      const double overlap = iou(d, c.representative());
      if (overlap > best_iou) {
        best_iou = overlap;
        best = &c;
      }
    }
    if (best != nullptr && best_iou > params.iou_threshold) {
      best->add(d);
    } else {
      Cluster c;
      c.conf_min = d.confidence;
      c.conf_max = d.confidence;
      c.add(d);
      clusters.push_back(c);
    }
  }

  const double list_count = static_cast<double>(detection_lists.size());
  DetectionSet fused;
  fused.reserve(clusters.size());
  for (const auto& c : clusters) {
    Detection d = c.representative();
    if (params.cluster_conf_mode == ClusterConfMode::weighted && list_count > 0.0) {
      d.confidence *= std::min(static_cast<double>(c.count), list_count) / list_count;
    }
    if (d.confidence < params.confidence_floor) continue;
    fused.push_back(d);
  }
  std::sort(fused.begin(), fused.end(), [](const Detection& a, const Detection& b) {
    return std::tie(b.confidence, a.class_id, a.x1, a.y1, a.x2, a.y2) <
           std::tie(a.confidence, b.class_id, b.x1, b.y1, b.x2, b.y2);
  });
  return fused;
}

LossBreakdown detection_loss(const DetectionSet& predictions, const DetectionSet& ground_truth,
                             const LossParams& params) {
  params.validate();
  validate_detections(predictions);
  validate_detections(ground_truth);

  struct Pair {
    double overlap;
    std::size_t gt;
    std::size_t pred;
  };
  std::vector<Pair> pairs;
  for (std::size_t g = 0; g < ground_truth.size(); ++g) {
    for (std::size_t p = 0; p < predictions.size(); ++p) {
      if (predictions[p].class_id != ground_truth[g].class_id) continue;
      const double overlap = iou(predictions[p], ground_truth[g]);
      if (overlap >= params.match_iou) pairs.push_back({overlap, g, p});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    return std::tie(b.overlap, a.gt, a.pred) < std::tie(a.overlap, b.gt, b.pred);
  });

  std::vector<bool> gt_used(ground_truth.size(), false);
  std::vector<bool> pred_used(predictions.size(), false);
  double nll_sum = 0.0;
  double loc_sum = 0.0;
  std::size_t matched = 0;
  for (const auto& pr : pairs) {
    if (gt_used[pr.gt] || pred_used[pr.pred]) continue;
    gt_used[pr.gt] = true;
    pred_used[pr.pred] = true;
    ++matched;

    const Detection& g = ground_truth[pr.gt];
    const Detection& p = predictions[pr.pred];
    nll_sum += -std::log(std::max(p.confidence, kConfidenceFloorForLog));
    const double gw = g.width();
    const double gh = g.height();
    loc_sum += smooth_l1((p.x1 - g.x1) / gw);
    loc_sum += smooth_l1((p.y1 - g.y1) / gh);
    loc_sum += smooth_l1((p.x2 - g.x2) / gw);
    loc_sum += smooth_l1((p.y2 - g.y2) / gh);
  }

  LossBreakdown out;
  if (matched > 0) {
    out.cls_loss = nll_sum / static_cast<double>(matched);
    out.loc_loss = loc_sum / static_cast<double>(4 * matched);
  }
  const std::size_t missed = ground_truth.size() - matched;
  out.cls_loss += params.miss_penalty * static_cast<double>(missed);
  for (std::size_t p = 0; p < predictions.size(); ++p) {
    if (!pred_used[p]) {
      out.cls_loss += params.false_positive_penalty * predictions[p].confidence;
    }
  }
  return out;
}

}  // namespace fusim
