#include "fusim/profile.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

namespace fusim {

namespace {

std::vector<std::string> split_config_id(const std::string& config_id) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= config_id.size()) {
    const std::size_t pos = config_id.find('+', start);
    if (pos == std::string::npos) {
      parts.push_back(config_id.substr(start));
      break;
    }
    parts.push_back(config_id.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

}  // namespace

void DegradationParams::validate() const {
  if (!(box_noise_sigma >= 0.0)) throw ValidationError("degradation box_noise_sigma must be >= 0");
  if (!(miss_prob >= 0.0 && miss_prob <= 1.0)) {
    throw ValidationError("degradation miss_prob must be in [0, 1]");
  }
  if (!(false_pos_rate >= 0.0)) throw ValidationError("degradation false_pos_rate must be >= 0");
  if (!(conf_scale >= 0.0 && conf_scale <= 1.0)) {
    throw ValidationError("degradation conf_scale must be in [0, 1]");
  }
}

std::string_view to_string(FusionBenefitPolicy p) {
  switch (p) {
    case FusionBenefitPolicy::best: return "best";
    case FusionBenefitPolicy::mean: return "mean";
    case FusionBenefitPolicy::worst: return "worst";
  }
  return "best";
}

FusionBenefitPolicy parse_fusion_benefit_policy(std::string_view s) {
  if (s == "best") return FusionBenefitPolicy::best;
  if (s == "mean") return FusionBenefitPolicy::mean;
  if (s == "worst") return FusionBenefitPolicy::worst;
  throw ValidationError("unknown fusion benefit policy: " + std::string(s));
}

const DegradationParams* DegradationModel::find(Modality m, const ContextId& context) const {
  const auto per_modality = table.find(m);
  if (per_modality == table.end()) return nullptr;
  auto it = per_modality->second.find(context);
  if (it == per_modality->second.end()) {
    it = per_modality->second.find(contexts::kDefaultKey);
    if (it == per_modality->second.end()) return nullptr;
  }
  return &it->second;
}

DegradationParams DegradationModel::lookup(Modality m, const ContextId& context) const {
  const DegradationParams* p = find(m, context);
  if (p == nullptr) {
    throw ValidationError("no degradation entry for modality '" + std::string(to_string(m)) +
                          "' in context '" + context + "' and no default row");
  }
  return *p;
}

DegradationParams DegradationModel::combine(const std::vector<Modality>& modalities,
                                            const ContextId& context) const {
  if (modalities.empty()) throw ValidationError("degradation combine: empty modality list");
  DegradationParams out = lookup(modalities.front(), context);
  if (modalities.size() == 1) return out;

  switch (policy) {
    case FusionBenefitPolicy::best:
      for (std::size_t i = 1; i < modalities.size(); ++i) {
        const DegradationParams p = lookup(modalities[i], context);
        out.box_noise_sigma = std::min(out.box_noise_sigma, p.box_noise_sigma);
        out.miss_prob = std::min(out.miss_prob, p.miss_prob);
        out.false_pos_rate = std::min(out.false_pos_rate, p.false_pos_rate);
        out.conf_scale = std::max(out.conf_scale, p.conf_scale);
      }
      break;
    case FusionBenefitPolicy::worst:
      for (std::size_t i = 1; i < modalities.size(); ++i) {
        const DegradationParams p = lookup(modalities[i], context);
        out.box_noise_sigma = std::max(out.box_noise_sigma, p.box_noise_sigma);
        out.miss_prob = std::max(out.miss_prob, p.miss_prob);
        out.false_pos_rate = std::max(out.false_pos_rate, p.false_pos_rate);
        out.conf_scale = std::min(out.conf_scale, p.conf_scale);
      }
      break;
    case FusionBenefitPolicy::mean: {
      double sigma = out.box_noise_sigma, miss = out.miss_prob;
      double fp = out.false_pos_rate, conf = out.conf_scale;
      for (std::size_t i = 1; i < modalities.size(); ++i) {
        const DegradationParams p = lookup(modalities[i], context);
        sigma += p.box_noise_sigma;
        miss += p.miss_prob;
        fp += p.false_pos_rate;
        conf += p.conf_scale;
      }
      const double n = static_cast<double>(modalities.size());
      out = {sigma / n, miss / n, fp / n, conf / n};
      break;
    }
  }
  return out;
}

void DegradationModel::validate() const {
  for (const auto& [modality, rows] : table) {
    (void)modality;
    for (const auto& [context, params] : rows) {
      (void)context;
      params.validate();
    }
  }
}

void EstimatorParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ValidationError("estimator alpha must be in (0, 1]");
  if (!(misclassification_prob >= 0.0 && misclassification_prob <= 1.0)) {
    throw ValidationError("estimator misclassification_prob must be in [0, 1]");
  }
  if (!(fusion_prior_gain >= 0.0 && fusion_prior_gain < 1.0)) {
    throw ValidationError("estimator fusion_prior_gain must be in [0, 1)");
  }
}

void OptimizerParams::validate() const {
  if (!(gamma >= 0.0)) throw ValidationError("optimizer gamma must be >= 0");
}

void GenerationParams::validate() const {
  if (!(objects_per_frame >= 0.0)) throw ValidationError("generation objects_per_frame must be >= 0");
  if (!(frame_width > 0.0 && frame_height > 0.0)) {
    throw ValidationError("generation frame size must be positive");
  }
  if (!(min_box_side > 0.0)) throw ValidationError("generation min_box_side must be > 0");
  if (!(max_box_side >= min_box_side)) {
    throw ValidationError("generation max_box_side must be >= min_box_side");
  }
  if (max_box_side > frame_width || max_box_side > frame_height) {
    throw ValidationError("generation max_box_side must fit inside the frame");
  }
  if (num_classes < 1) throw ValidationError("generation num_classes must be >= 1");
}

std::string_view to_string(LatencyRule r) {
  return r == LatencyRule::sequential ? "sequential" : "max_parallel";
}

LatencyRule parse_latency_rule(std::string_view s) {
  if (s == "sequential") return LatencyRule::sequential;
  if (s == "max_parallel") return LatencyRule::max_parallel;
  throw ValidationError("unknown latency rule: " + std::string(s));
}

bool SystemProfile::has_sensor(const std::string& id) const {
  return std::any_of(sensors.begin(), sensors.end(),
                     [&](const SensorSpec& s) { return s.id == id; });
}

bool SystemProfile::has_branch(const std::string& id) const {
  return std::any_of(branches.begin(), branches.end(),
                     [&](const BranchSpec& b) { return b.id == id; });
}

const SensorSpec& SystemProfile::sensor(const std::string& id) const {
  for (const auto& s : sensors) {
    if (s.id == id) return s;
  }
  throw ValidationError("unknown sensor id: " + id);
}

const BranchSpec& SystemProfile::branch(const std::string& id) const {
  for (const auto& b : branches) {
    if (b.id == id) return b;
  }
  throw ValidationError("unknown branch id: " + id);
}

double SystemProfile::branch_loss(const BranchSpec& branch, const ContextId& context) const {
  auto it = branch.loss_profile.find(context);
  if (it == branch.loss_profile.end()) {
    it = branch.loss_profile.find(contexts::kDefaultKey);
    if (it == branch.loss_profile.end()) {
      throw ValidationError("branch " + branch.id + ": no loss profile entry for context '" +
                            context + "' and no default");
    }
  }
  return it->second;
}

std::vector<ContextId> SystemProfile::contexts() const {
  std::set<ContextId> out;
  for (const auto& b : branches) {
    for (const auto& [context, loss] : b.loss_profile) {
      (void)loss;
      out.insert(context);
    }
  }
  for (const auto& [modality, rows] : degradation.table) {
    (void)modality;
    for (const auto& [context, params] : rows) {
      (void)params;
      out.insert(context);
    }
  }
  for (const auto& [context, configs] : knowledge_rules) {
    (void)configs;
    out.insert(context);
  }
  out.erase(contexts::kDefaultKey);
  return {out.begin(), out.end()};
}

void SystemProfile::validate() const {
  if (!(step_rate_hz > 0.0)) throw ValidationError("profile step_rate_hz must be > 0");
  if (!(switch_overhead_s >= 0.0)) throw ValidationError("profile switch_overhead_s must be >= 0");
  if (!(switch_overhead_j >= 0.0)) throw ValidationError("profile switch_overhead_j must be >= 0");
  if (context_id_overhead_j && !(*context_id_overhead_j >= 0.0)) {
    throw ValidationError("profile context_id_overhead_j must be >= 0");
  }
  if (max_config_size < 0) throw ValidationError("profile max_config_size must be >= 0");
  if (sensors.empty()) throw ValidationError("profile must declare at least one sensor");
  if (branches.empty()) throw ValidationError("profile must declare at least one branch");

  std::set<std::string> sensor_ids;
  for (const auto& s : sensors) {
    s.validate();
    if (!sensor_ids.insert(s.id).second) {
      throw ValidationError("duplicate sensor id: " + s.id);
    }
  }
  std::set<std::string> branch_ids;
  for (const auto& b : branches) {
    b.validate();
    if (!branch_ids.insert(b.id).second) {
      throw ValidationError("duplicate branch id: " + b.id);
    }
    for (const auto& sensor_id : b.sensors) {
      if (!sensor_ids.contains(sensor_id)) {
        throw ValidationError("branch " + b.id + " references unknown sensor: " + sensor_id);
      }
    }
  }
  for (const auto& config_id : explicit_configurations) {
    (void)canonicalize_configuration(*this, split_config_id(config_id));
  }

  fusion.validate();
  loss.validate();
  optimizer.validate();
  estimator.validate();
  degradation.validate();
  generation.validate();

  for (const auto& [config_id, override_values] : measured) {
    if (override_values.energy_j && !(*override_values.energy_j >= 0.0)) {
      throw ValidationError("measured energy for " + config_id + " must be >= 0");
    }
    if (override_values.latency_s && !(*override_values.latency_s > 0.0)) {
      throw ValidationError("measured latency for " + config_id + " must be > 0");
    }
  }
}

ModelConfiguration canonicalize_configuration(const SystemProfile& profile,
                                              const std::vector<std::string>& branch_ids) {
  if (branch_ids.empty()) {
    throw ValidationError("configuration must contain at least one branch");
  }
  for (const auto& id : branch_ids) {
    if (!profile.has_branch(id)) {
      throw ValidationError("configuration references unknown branch: " + id);
    }
  }
  return make_configuration(branch_ids);
}

std::vector<ModelConfiguration> enumerate_configurations(const SystemProfile& profile) {
  std::vector<ModelConfiguration> out;
  if (!profile.explicit_configurations.empty()) {
    std::set<std::string> seen;
    for (const auto& config_id : profile.explicit_configurations) {
      ModelConfiguration config =
          canonicalize_configuration(profile, split_config_id(config_id));
      if (seen.insert(config.id).second) out.push_back(std::move(config));
    }
  } else {
    const std::size_t n = profile.branches.size();
    if (n > 24) {
      throw ValidationError("refusing to enumerate subsets of " + std::to_string(n) +
                            " branches; provide explicit configurations or a size cap");
    }
    const std::size_t cap =
        profile.max_config_size > 0 ? static_cast<std::size_t>(profile.max_config_size) : n;
    for (std::uint64_t mask = 1; mask < (1ULL << n); ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) > cap) continue;
      std::vector<std::string> ids;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1ULL << i)) ids.push_back(profile.branches[i].id);
      }
      out.push_back(make_configuration(std::move(ids)));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const ModelConfiguration& a, const ModelConfiguration& b) { return a.id < b.id; });
  return out;
}

std::vector<std::string> config_sensors(const SystemProfile& profile,
                                        const ModelConfiguration& config) {
  std::set<std::string> out;
  for (const auto& branch_id : config.branches) {
    const BranchSpec& b = profile.branch(branch_id);
    out.insert(b.sensors.begin(), b.sensors.end());
  }
  return {out.begin(), out.end()};
}

std::vector<Modality> branch_modalities(const SystemProfile& profile, const BranchSpec& branch) {
  std::set<Modality> seen;
  std::vector<Modality> out;
  for (const auto& sensor_id : branch.sensors) {
    const Modality m = profile.sensor(sensor_id).modality;
    if (seen.insert(m).second) out.push_back(m);
  }
  return out;
}

}  // namespace fusim
