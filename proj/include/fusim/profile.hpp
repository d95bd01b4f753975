#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fusim/fusion.hpp"
#include "fusim/types.hpp"

namespace fusim {

// Synthetic detection quality for one (modality, context) cell.
struct DegradationParams {
  double box_noise_sigma{0.0};  // fraction of box size
  double miss_prob{0.0};
  double false_pos_rate{0.0};  // expected spurious detections per frame
  double conf_scale{1.0};

  void validate() const;
};

// How a multi-sensor branch combines its member modalities' degradation.
enum class FusionBenefitPolicy { best, mean, worst };

std::string_view to_string(FusionBenefitPolicy p);
FusionBenefitPolicy parse_fusion_benefit_policy(std::string_view s);

struct DegradationModel {
  FusionBenefitPolicy policy{FusionBenefitPolicy::best};
  std::map<Modality, std::map<ContextId, DegradationParams>> table;

  // Context entry, falling back to the modality's "default" row.
  const DegradationParams* find(Modality m, const ContextId& context) const;
  DegradationParams lookup(Modality m, const ContextId& context) const;
  // Element-wise combination across modalities per the policy.
  DegradationParams combine(const std::vector<Modality>& modalities,
                            const ContextId& context) const;
  void validate() const;
};

struct EstimatorParams {
  double alpha{0.3};                 // EMA step size
  double misclassification_prob{0.0};
  double fusion_prior_gain{0.05};    // prior discount for multi-branch configurations

  void validate() const;
};

struct OptimizerParams {
  double gamma{0.1};
  bool normalize{false};  // min-max normalize loss/energy before weighting

  void validate() const;
};

struct GenerationParams {
  double objects_per_frame{3.0};  // Poisson mean
  double frame_width{640.0};
  double frame_height{480.0};
  double min_box_side{16.0};
  double max_box_side{160.0};
  int num_classes{3};

  void validate() const;
};

enum class LatencyRule { sequential, max_parallel };

std::string_view to_string(LatencyRule r);
LatencyRule parse_latency_rule(std::string_view s);

// Offline-measured per-configuration totals; when present they override
// the per-branch composition of algorithm energy/latency.
struct MeasuredConfig {
  std::optional<double> energy_j;
  std::optional<double> latency_s;
};

// Reference measurement for one static fusion method, kept verbatim from
// the source dataset (latency in milliseconds).
struct DatasetRow {
  std::string label;
  std::string config_id;
  double avg_loss{0.0};
  double energy_j{0.0};
  double latency_ms{0.0};
};

// Context id -> preferred configuration ids. "default" is the fallback row.
using KnowledgeRules = std::map<ContextId, std::vector<std::string>>;

struct SystemProfile {
  std::string name{"unnamed"};
  double step_rate_hz{10.0};
  double switch_overhead_s{0.001};
  double switch_overhead_j{0.0};
  // Per-step algorithm overhead of a context-identification step (stems +
  // gate). When unset, the algorithm energy of the most expensive
  // configuration is used.
  std::optional<double> context_id_overhead_j;
  LatencyRule latency_rule{LatencyRule::sequential};
  int max_config_size{0};  // 0 = no cap when enumerating

  std::vector<SensorSpec> sensors;
  std::vector<BranchSpec> branches;
  // Canonical configuration ids; empty means "enumerate all non-empty
  // branch subsets up to max_config_size".
  std::vector<std::string> explicit_configurations;

  FusionParams fusion;
  LossParams loss;
  OptimizerParams optimizer;
  EstimatorParams estimator;
  KnowledgeRules knowledge_rules;
  DegradationModel degradation;
  GenerationParams generation;
  std::map<std::string, MeasuredConfig> measured;
  std::vector<DatasetRow> dataset;

  double step_duration_s() const { return 1.0 / step_rate_hz; }

  bool has_sensor(const std::string& id) const;
  bool has_branch(const std::string& id) const;
  const SensorSpec& sensor(const std::string& id) const;
  const BranchSpec& branch(const std::string& id) const;

  // Branch loss for a context, falling back to the branch's "default" row.
  double branch_loss(const BranchSpec& branch, const ContextId& context) const;

  // Sorted union of the contexts named anywhere in the profile, without
  // the "default" key.
  std::vector<ContextId> contexts() const;

  void validate() const;
};

// Resolves branch ids against the profile and builds the canonical
// configuration. Unknown ids raise a ValidationError naming the id.
ModelConfiguration canonicalize_configuration(const SystemProfile& profile,
                                              const std::vector<std::string>& branch_ids);

// The configuration space: the explicit list when given, otherwise all
// non-empty branch subsets up to max_config_size. Deterministically
// ordered by canonical id.
std::vector<ModelConfiguration> enumerate_configurations(const SystemProfile& profile);

// Sorted union of the sensors required by the configuration's branches.
std::vector<std::string> config_sensors(const SystemProfile& profile,
                                        const ModelConfiguration& config);

// Deduplicated modalities of a branch's sensors.
std::vector<Modality> branch_modalities(const SystemProfile& profile, const BranchSpec& branch);

}  // namespace fusim
