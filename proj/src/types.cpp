#include "fusim/types.hpp"

#include <algorithm>
#include <cmath>

namespace fusim {

std::string_view to_string(Modality m) {
  switch (m) {
    case Modality::camera: return "camera";
    case Modality::lidar: return "lidar";
    case Modality::radar: return "radar";
  }
  return "camera";
}

Modality parse_modality(std::string_view s) {
  if (s == "camera") return Modality::camera;
  if (s == "lidar") return Modality::lidar;
  if (s == "radar") return Modality::radar;
  throw ValidationError("unknown modality: " + std::string(s));
}

namespace contexts {
const std::vector<ContextId>& standard() {
  static const std::vector<ContextId> kAll = {kCity, kFog,   kJunction, kMotorway,
                                              kNight, kRain, kRural,    kSnow};
  return kAll;
}
}  // namespace contexts

void SensorSpec::validate() const {
  if (id.empty()) throw ValidationError("sensor id must not be empty");
  if (!(p_meas_w >= 0.0)) throw ValidationError("sensor " + id + ": p_meas_w must be >= 0");
  if (!(p_motor_w >= 0.0)) throw ValidationError("sensor " + id + ": p_motor_w must be >= 0");
  if (!(freq_hz > 0.0)) throw ValidationError("sensor " + id + ": freq_hz must be > 0");
  if (!spinning && p_motor_w != 0.0) {
    throw ValidationError("sensor " + id + ": fixed sensors must have p_motor_w = 0");
  }
}

void BranchSpec::validate() const {
  if (id.empty()) throw ValidationError("branch id must not be empty");
  if (id.find('+') != std::string::npos) {
    throw ValidationError("branch " + id + ": '+' is reserved for configuration ids");
  }
  if (sensors.empty()) throw ValidationError("branch " + id + ": requires at least one sensor");
  if (!(latency_s > 0.0)) throw ValidationError("branch " + id + ": latency_s must be > 0");
  if (!(power_w > 0.0)) throw ValidationError("branch " + id + ": power_w must be > 0");
  for (const auto& [context, loss] : loss_profile) {
    if (!(loss >= 0.0) || !std::isfinite(loss)) {
      throw ValidationError("branch " + id + ": loss_profile[" + context +
                            "] must be finite and >= 0");
    }
  }
}

void Detection::validate() const {
  if (!(x1 < x2) || !(y1 < y2)) {
    throw ValidationError("detection box must satisfy x1 < x2 and y1 < y2");
  }
  if (!(confidence >= 0.0 && confidence <= 1.0)) {
    throw ValidationError("detection confidence must be in [0, 1]");
  }
}

void validate_detections(const DetectionSet& set) {
  for (const auto& d : set) d.validate();
}

bool ModelConfiguration::contains(std::string_view branch_id) const {
  return std::binary_search(branches.begin(), branches.end(), branch_id);
}

std::string canonical_config_id(std::vector<std::string> branch_ids) {
  if (branch_ids.empty()) {
    throw ValidationError("configuration must contain at least one branch");
  }
  std::sort(branch_ids.begin(), branch_ids.end());
  branch_ids.erase(std::unique(branch_ids.begin(), branch_ids.end()), branch_ids.end());
  std::string id;
  for (const auto& b : branch_ids) {
    if (!id.empty()) id += '+';
    id += b;
  }
  return id;
}

ModelConfiguration make_configuration(std::vector<std::string> branch_ids) {
  if (branch_ids.empty()) {
    throw ValidationError("configuration must contain at least one branch");
  }
  std::sort(branch_ids.begin(), branch_ids.end());
  branch_ids.erase(std::unique(branch_ids.begin(), branch_ids.end()), branch_ids.end());
  ModelConfiguration config;
  config.id = canonical_config_id(branch_ids);
  config.branches = std::move(branch_ids);
  return config;
}

}  // namespace fusim
