#pragma once

#include <vector>

#include "fusim/types.hpp"

namespace fusim {

enum class ClusterConfMode {
  mean,      // fused confidence = arithmetic mean of the cluster
  weighted,  // mean rescaled by min(cluster size, #input lists) / #input lists
};

struct FusionParams {
  double iou_threshold{0.55};
  double confidence_floor{0.0};
  ClusterConfMode cluster_conf_mode{ClusterConfMode::mean};

  void validate() const;
};

struct LossParams {
  double match_iou{0.5};
  double miss_penalty{1.0};
  double false_positive_penalty{0.5};  // scaled by the prediction's confidence

  void validate() const;
};

struct LossBreakdown {
  double cls_loss{0.0};
  double loc_loss{0.0};

  double total() const { return cls_loss + loc_loss; }
};

// Intersection over union of two corner-format boxes; 0 when disjoint.
double iou(const Detection& a, const Detection& b);

// Combines detections from several sources. Per class, boxes are greedily
// clustered against the running confidence-weighted mean of each cluster;
// the fused box is that weighted mean. Detections are canonically sorted
// before clustering, so the result is invariant to input order. Output is
// sorted by descending confidence; entries below confidence_floor are
// dropped.
DetectionSet weighted_boxes_fusion(const std::vector<DetectionSet>& detection_lists,
                                   const FusionParams& params);

// Scores predictions against ground truth. Matching is greedy one-to-one
// within each class by descending IoU, requiring IoU >= match_iou.
// loc_loss: mean smooth-L1 over matched corner offsets, normalized by the
// ground-truth box width/height. cls_loss: mean -log(confidence) over
// matched pairs, plus miss_penalty per unmatched ground truth and
// false_positive_penalty * confidence per unmatched prediction.
LossBreakdown detection_loss(const DetectionSet& predictions, const DetectionSet& ground_truth,
                             const LossParams& params = {});

}  // namespace fusim
