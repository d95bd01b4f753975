#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "fusim/profile.hpp"
#include "fusim/types.hpp"

namespace fusim {

enum class SensorState { active, gated };

struct SensorActivation {
  std::string sensor_id;
  SensorState state{SensorState::active};
};

// Energy drawn by one sensor over a step.
//   active          -> (p_meas + p_motor) * duration
//   gated, spinning -> p_motor * duration   (motor keeps spinning)
//   gated, fixed    -> 0
// With duration = 1/freq_hz the active case is the per-measurement energy.
double sensor_step_energy(const SensorSpec& sensor, SensorState state, double step_duration_s);

struct AlgoCost {
  double energy_j{0.0};
  double latency_s{0.0};
};

// Per-inference energy/latency of a configuration. Composed per branch as
// sum(power * latency); latency aggregates per the profile's latency rule.
// A measured per-configuration override in the profile wins over the
// composition.
AlgoCost algorithm_step_energy(const ModelConfiguration& config, const SystemProfile& profile);

// E_sys for one step: sensors + algorithm + reconfiguration overhead.
double system_step_energy(double sensor_j, double algorithm_j, double switch_j);

struct LedgerEntry {
  std::int64_t t{0};
  ContextId context;
  std::string config_id;
  double sensor_j{0.0};
  double algo_j{0.0};
  double switch_j{0.0};
  double loss{0.0};
  double latency_s{0.0};

  double total_j() const { return sensor_j + algo_j + switch_j; }
};

// Per-step energy accounting with running totals. Single writer; one
// ledger per simulation run.
class EnergyLedger {
 public:
  void add(const LedgerEntry& entry);

  const std::vector<LedgerEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  double total_sensor_j() const { return total_sensor_j_; }
  double total_algo_j() const { return total_algo_j_; }
  double total_switch_j() const { return total_switch_j_; }
  double total_j() const { return total_sensor_j_ + total_algo_j_ + total_switch_j_; }

  // Columns: t,context,config_id,sensor_j,algo_j,switch_j,loss,latency_s
  void write_csv(std::ostream& out) const;

 private:
  std::vector<LedgerEntry> entries_;
  double total_sensor_j_{0.0};
  double total_algo_j_{0.0};
  double total_switch_j_{0.0};
};

}  // namespace fusim
