#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fusim {

// Input or profile data violates a documented precondition. CLI maps this
// to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Filesystem / serialization failure. CLI maps this to exit code 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Modality { camera, lidar, radar };

std::string_view to_string(Modality m);
Modality parse_modality(std::string_view s);

// Contexts are open-ended strings; these are the scenario labels shipped
// with the bundled profiles. "default" is a reserved fallback key inside
// loss profiles, degradation tables, and rule tables.
using ContextId = std::string;

namespace contexts {
inline constexpr char kCity[] = "city";
inline constexpr char kFog[] = "fog";
inline constexpr char kJunction[] = "junction";
inline constexpr char kMotorway[] = "motorway";
inline constexpr char kNight[] = "night";
inline constexpr char kRain[] = "rain";
inline constexpr char kRural[] = "rural";
inline constexpr char kSnow[] = "snow";
inline constexpr char kDefaultKey[] = "default";

const std::vector<ContextId>& standard();
}  // namespace contexts

// Physical sensor. Spinning sensors keep their motor powered even while
// the measurement electronics are clock gated.
struct SensorSpec {
  std::string id;
  Modality modality{Modality::camera};
  double p_meas_w{0.0};
  double p_motor_w{0.0};
  double freq_hz{10.0};
  bool spinning{false};

  void validate() const;
};

// An executable detector branch: the unit of runtime selection.
// loss_profile maps context id -> expected detection loss and may carry a
// "default" fallback entry.
struct BranchSpec {
  std::string id;
  std::vector<std::string> sensors;
  double latency_s{0.0};
  double power_w{0.0};
  std::map<ContextId, double> loss_profile;

  void validate() const;
};

// Axis-aligned box detection in corner format.
struct Detection {
  int class_id{0};
  double x1{0.0};
  double y1{0.0};
  double x2{0.0};
  double y2{0.0};
  double confidence{1.0};

  double width() const { return x2 - x1; }
  double height() const { return y2 - y1; }
  void validate() const;
};

using DetectionSet = std::vector<Detection>;

void validate_detections(const DetectionSet& set);

// A non-empty set of branches executed together. Identity is a pure
// function of the branch set: ids are sorted, deduplicated, and joined
// with '+'.
struct ModelConfiguration {
  std::vector<std::string> branches;
  std::string id;

  std::size_t size() const { return branches.size(); }
  bool contains(std::string_view branch_id) const;
  bool operator==(const ModelConfiguration& other) const = default;
};

std::string canonical_config_id(std::vector<std::string> branch_ids);

// Builds a configuration without resolving branch ids against a profile;
// use canonicalize_configuration() when a profile is at hand.
ModelConfiguration make_configuration(std::vector<std::string> branch_ids);

}  // namespace fusim
