#include "mmon/war_allocator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mmon/errors.hpp"

namespace mmon {
namespace {

constexpr int kMaxIterations = 200;

double marginal(const FleetSpec& fleet, std::size_t i, double mu) {
  const MachineParams& m = fleet.machines[i];
  const double d_accept = mu + m.kappa();
  const double d_reject = mu + m.alpha + m.beta;
  return fleet.w[i] * (fleet.w_a * m.alpha / (d_accept * d_accept) +
                       fleet.w_r * m.beta / (d_reject * d_reject));
}

WaterLevelSolution invert_marginal(const FleetSpec& fleet, std::size_t i,
                                   double psi, double inner_tol) {
  if (marginal(fleet, i, 0.0) <= psi) return {0.0, false};
  const double cap = fleet.budget;
  if (marginal(fleet, i, cap) > psi) return {cap, true};
  double lo = 0.0;
  double hi = cap;
  for (int iter = 0; iter < kMaxIterations && hi - lo > inner_tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (marginal(fleet, i, mid) > psi ? lo : hi) = mid;
  }
  if (hi - lo > inner_tol) {
    throw NumericError("water-level inversion did not converge", hi - lo);
  }
  return {0.5 * (lo + hi), false};
}

}  // namespace

double war_value(const FleetSpec& fleet, const Allocation& alloc) {
  fleet.validate();
  alloc.validate(fleet);
  double total = 0.0;
  for (std::size_t i = 0; i < fleet.size(); ++i) {
    const MachineParams& m = fleet.machines[i];
    const double far = m.alpha / (alloc.mu[i] + m.kappa());
    const double frr = m.beta / (alloc.mu[i] + m.alpha + m.beta);
    total += fleet.w[i] * (fleet.w_a * far + fleet.w_r * frr);
  }
  return total;
}

double war_marginal(const FleetSpec& fleet, std::size_t i, double mu) {
  if (i >= fleet.size()) {
    throw ValidationError("machine index out of range");
  }
  if (!(std::isfinite(mu) && mu >= 0.0)) {
    throw ValidationError("sampling rate must be finite and non-negative");
  }
  return marginal(fleet, i, mu);
}

WaterLevelSolution mu_for_water_level(const FleetSpec& fleet, std::size_t i,
                                      double psi) {
  fleet.validate();
  if (i >= fleet.size()) {
    throw ValidationError("machine index out of range");
  }
  if (!(std::isfinite(psi) && psi >= 0.0)) {
    throw ValidationError("water level must be finite and non-negative");
  }
  return invert_marginal(fleet, i, psi, 1e-12);
}

WaterFillResult water_fill(const FleetSpec& fleet, double tol) {
  fleet.validate();
  if (!(std::isfinite(tol) && tol > 0.0)) {
    throw ValidationError("budget tolerance must be finite and positive");
  }
  const std::size_t n = fleet.size();
  const double omega = fleet.budget;
  // Keep the per-machine inversions tight enough that their combined
  // noise cannot mask the outer budget tolerance.
  const double inner_tol =
      std::min(1e-12, 0.1 * tol * omega / static_cast<double>(n));

  // The consumed budget decreases monotonically in the level psi, from
  // ≥ Ω at the smallest full-budget marginal down to 0 at the largest
  // idle marginal, so this bracket always straddles Σμ = Ω.
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    lo = std::min(lo, marginal(fleet, i, omega));
    hi = std::max(hi, marginal(fleet, i, 0.0));
  }

  std::vector<WaterLevelSolution> per_machine(n);
  const auto fill_at = [&](double psi) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      per_machine[i] = invert_marginal(fleet, i, psi, inner_tol);
      total += per_machine[i].mu;
    }
    return total;
  };

  double psi = lo;
  double residual = std::abs(fill_at(psi) - omega);
  int iterations = 0;
  while (residual > tol * omega && iterations < kMaxIterations) {
    ++iterations;
    psi = 0.5 * (lo + hi);
    const double total = fill_at(psi);
    residual = std::abs(total - omega);
    (total > omega ? lo : hi) = psi;
  }
  if (residual > tol * omega) {
    throw NumericError("water filling did not reach the budget tolerance",
                       residual);
  }

  WaterFillResult result;
  result.alloc.mu.resize(n);
  result.marginals.resize(n);
  result.psi = psi;
  result.iterations = iterations;
  for (std::size_t i = 0; i < n; ++i) {
    result.alloc.mu[i] = per_machine[i].mu;
    result.marginals[i] = marginal(fleet, i, per_machine[i].mu);
    result.any_capped = result.any_capped || per_machine[i].capped;
  }
  return result;
}

}  // namespace mmon
