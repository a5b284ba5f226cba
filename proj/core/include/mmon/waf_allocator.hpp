#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mmon/fleet.hpp"

namespace mmon {

/// Projected-gradient-descent knobs.  Unset step and grad_tol resolve to
/// 0.9/L and 1e-8·Ω respectively.
struct PgdConfig {
  std::optional<double> step{};      ///< τ; must satisfy τ < 1/L
  std::uint64_t max_iters = 200000;  ///< hitting this cap is not an error
  std::optional<double> grad_tol{};  ///< stop when ‖μ⁺−μ‖/τ drops below
  std::uint64_t restarts = 8;        ///< random starts for multi_start_waf
  std::uint64_t seed = 0;            ///< seed for the random starts
};

/// Result of a descent run (or the winner across starts).
struct WafSolution {
  Allocation alloc;
  double waf = 0.0;
  double stationarity = 0.0;   ///< ‖μ⁺−μ‖/τ at exit
  int origin = -1;             ///< start index; see waf_origin_label
  std::uint64_t iterations = 0;
};

/// Human-readable name for a start index: vertices come first (one per
/// machine), then the simplex center, then the random starts.
std::string waf_origin_label(int origin, std::size_t n_machines);

/// Weighted average freshness Σ w_i·E[Δ_i](μ_i) of an allocation.  For a
/// λ_i=0 machine the λ→0 limit of the closed form is used so the
/// objective stays continuous in μ_i at 0.
double waf_value(const FleetSpec& fleet, const Allocation& alloc);

/// Gradient of the weighted staleness Σ w_i·(1−E[Δ_i]) — the quantity
/// descent minimizes — with respect to the allocation.
std::vector<double> staleness_gradient_vec(const FleetSpec& fleet,
                                           const Allocation& alloc);

/// Smoothness constant: L = max_i w_i·sup_{μ≥0} |d²staleness_i/dμ²|,
/// each supremum bounded by curvature_bound below.  Linear in the
/// weights; does not require them to be normalized.
double estimate_smoothness(const FleetSpec& fleet);

/// Upper bound on |d²staleness/dμ²| over μ ∈ [0,∞) for one machine,
/// via a grid-plus-refinement scan of the closed-form second derivative
/// on [0, μ_cap] (beyond which an explicit tail bound dominates), padded
/// by a 1.25 safety factor.
double curvature_bound(const MachineParams& params);

/// Projected gradient descent on the budget simplex from a given start.
/// Iterates stay feasible; weighted staleness never increases (guaranteed
/// by τ < 1/L and asserted each step); stops at stationarity ≤ grad_tol
/// or after max_iters.
WafSolution pgd(const FleetSpec& fleet, const Allocation& init,
                const PgdConfig& cfg);

/// Best descent result across the simplex vertices, its center, and
/// cfg.restarts random starts (flat Dirichlet, scaled by the budget).
/// Ties resolve to the lowest start index.  Requires at least one machine
/// with a positive monotonicity condition, otherwise spending the whole
/// budget may be suboptimal and the simplex restriction unjustified.
WafSolution multi_start_waf(const FleetSpec& fleet, const PgdConfig& cfg);

}  // namespace mmon
