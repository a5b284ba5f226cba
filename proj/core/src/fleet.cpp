#include "mmon/fleet.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "mmon/errors.hpp"

namespace mmon {

namespace {
constexpr double kWeightSlack = 1e-12;
constexpr double kBudgetSlack = 1e-9;
}  // namespace

void FleetSpec::validate() const {
  if (machines.empty()) {
    throw ValidationError("fleet must contain at least one machine");
  }
  if (w.size() != machines.size()) {
    throw ValidationError("fleet has " + std::to_string(machines.size()) +
                          " machines but " + std::to_string(w.size()) +
                          " weights");
  }
  for (std::size_t i = 0; i < machines.size(); ++i) {
    machines[i].validate();
    if (machines[i].gamma != machines[i].beta) {
      throw ValidationError(
          "machine " + std::to_string(i) +
          ": fleet optimization requires γ=β (equal busy recovery rates)");
    }
    if (!(std::isfinite(w[i]) && w[i] >= 0.0)) {
      throw ValidationError("machine " + std::to_string(i) +
                            ": weight must be finite and non-negative");
    }
  }
  const double w_total = std::accumulate(w.begin(), w.end(), 0.0);
  if (std::abs(w_total - 1.0) > kWeightSlack) {
    throw ValidationError("machine weights must sum to 1, got " +
                          std::to_string(w_total));
  }
  if (!(std::isfinite(w_a) && w_a >= 0.0 && std::isfinite(w_r) && w_r >= 0.0)) {
    throw ValidationError("decision weights must be finite and non-negative");
  }
  if (std::abs(w_a + w_r - 1.0) > kWeightSlack) {
    throw ValidationError("decision weights w_a + w_r must sum to 1");
  }
  if (!(std::isfinite(budget) && budget > 0.0)) {
    throw ValidationError("sampling budget must be finite and positive");
  }
}

double Allocation::total() const {
  return std::accumulate(mu.begin(), mu.end(), 0.0);
}

void Allocation::validate(const FleetSpec& fleet) const {
  if (mu.size() != fleet.size()) {
    throw ValidationError("allocation size does not match fleet size");
  }
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (!(std::isfinite(mu[i]) && mu[i] >= 0.0)) {
      throw ValidationError("machine " + std::to_string(i) +
                            ": sampling rate must be finite and non-negative");
    }
  }
  if (total() > fleet.budget * (1.0 + kBudgetSlack)) {
    throw ValidationError("allocation exceeds the sampling budget");
  }
}

}  // namespace mmon
