#pragma once

#include <cstddef>
#include <vector>

#include "mmon/machine_params.hpp"

namespace mmon {

/// A fleet of machines competing for a shared sampling-rate budget.
/// Fleet-level optimization assumes both busy flavors of every machine
/// recover at the same rate, so γ_i must equal β_i.
struct FleetSpec {
  std::vector<MachineParams> machines;
  std::vector<double> w;  ///< per-machine weights, Σw_i = 1
  double w_a = 0.5;       ///< weight on false acceptances
  double w_r = 0.5;       ///< weight on false rejections
  double budget = 1.0;    ///< total sampling rate Ω

  std::size_t size() const { return machines.size(); }

  /// Requires ≥1 machine, valid per-machine rates with γ_i=β_i, w_i ≥ 0
  /// summing to 1, w_a,w_r ≥ 0 summing to 1, and a positive finite budget.
  void validate() const;
};

/// Per-machine sampling rates.
struct Allocation {
  std::vector<double> mu;

  double total() const;

  /// Requires one finite non-negative rate per machine, with the total
  /// not exceeding the budget (1e-9·Ω slack for round-off).
  void validate(const FleetSpec& fleet) const;
};

}  // namespace mmon
