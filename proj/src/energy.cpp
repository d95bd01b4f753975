#include "fusim/energy.hpp"

#include <algorithm>
#include <ostream>

#include "fusim/format.hpp"

namespace fusim {

double sensor_step_energy(const SensorSpec& sensor, SensorState state, double step_duration_s) {
  if (!(step_duration_s > 0.0)) {
    throw ValidationError("sensor_step_energy: step_duration_s must be > 0");
  }
  if (state == SensorState::active) {
    return (sensor.p_meas_w + sensor.p_motor_w) * step_duration_s;
  }
  return sensor.spinning ? sensor.p_motor_w * step_duration_s : 0.0;
}

AlgoCost algorithm_step_energy(const ModelConfiguration& config, const SystemProfile& profile) {
  if (config.branches.empty()) {
    throw ValidationError("algorithm_step_energy: configuration must be non-empty");
  }

  AlgoCost cost;
  for (const auto& branch_id : config.branches) {
    const BranchSpec& b = profile.branch(branch_id);  // throws on unknown id
    cost.energy_j += b.power_w * b.latency_s;
    if (profile.latency_rule == LatencyRule::sequential) {
      cost.latency_s += b.latency_s;
    } else {
      cost.latency_s = std::max(cost.latency_s, b.latency_s);
    }
  }

  const auto measured = profile.measured.find(config.id);
  if (measured != profile.measured.end()) {
    if (measured->second.energy_j) cost.energy_j = *measured->second.energy_j;
    if (measured->second.latency_s) cost.latency_s = *measured->second.latency_s;
  }
  return cost;
}

double system_step_energy(double sensor_j, double algorithm_j, double switch_j) {
  if (!(sensor_j >= 0.0) || !(algorithm_j >= 0.0) || !(switch_j >= 0.0)) {
    throw ValidationError("system_step_energy: components must be >= 0");
  }
  return sensor_j + algorithm_j + switch_j;
}

void EnergyLedger::add(const LedgerEntry& entry) {
  if (entry.sensor_j < 0.0 || entry.algo_j < 0.0 || entry.switch_j < 0.0) {
    throw ValidationError("ledger entries must have non-negative energy");
  }
  entries_.push_back(entry);
  total_sensor_j_ += entry.sensor_j;
  total_algo_j_ += entry.algo_j;
  total_switch_j_ += entry.switch_j;
}

void EnergyLedger::write_csv(std::ostream& out) const {
  out << "t,context,config_id,sensor_j,algo_j,switch_j,loss,latency_s\n";
  for (const auto& e : entries_) {
    out << format_int(e.t) << ',' << e.context << ',' << e.config_id << ','
        << format_double(e.sensor_j) << ',' << format_double(e.algo_j) << ','
        << format_double(e.switch_j) << ',' << format_double(e.loss) << ','
        << format_double(e.latency_s) << '\n';
  }
}

}  // namespace fusim
