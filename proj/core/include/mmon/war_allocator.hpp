#pragma once

#include <cstddef>
#include <vector>

#include "mmon/fleet.hpp"

namespace mmon {

/// Weighted action ratio Σ w_i (w_A·FAR_i + w_R·FRR_i) of an allocation,
/// with FAR_i = α_i/(μ_i+κ_i) and FRR_i = β_i/(μ_i+α_i+β_i).
double war_value(const FleetSpec& fleet, const Allocation& alloc);

/// Magnitude of machine i's contribution to the WAR slope at rate mu:
/// w_i·w_A·α_i/(μ+κ_i)² + w_i·w_R·β_i/(μ+α_i+β_i)².  Strictly decreasing
/// in μ, so a common level across machines certifies optimality.
double war_marginal(const FleetSpec& fleet, std::size_t i, double mu);

/// Rate solving war_marginal(i, μ) = psi, clipped to [0, budget].
struct WaterLevelSolution {
  double mu = 0.0;
  bool capped = false;  ///< marginal still above psi at μ = budget
};

/// Inverts the marginal for one machine at water level psi ≥ 0: returns 0
/// when the marginal at 0 already sits below psi, the unique positive
/// root otherwise (bisection, 1e-12 absolute tolerance on μ), and the
/// budget with the capped flag when even μ = budget leaves the marginal
/// above psi.
WaterLevelSolution mu_for_water_level(const FleetSpec& fleet, std::size_t i,
                                      double psi);

/// Water-filling output: the optimal allocation, the common marginal
/// level, and per-machine marginals at the returned rates.
struct WaterFillResult {
  Allocation alloc;
  double psi = 0.0;
  std::vector<double> marginals;
  int iterations = 0;
  bool any_capped = false;  ///< some machine sat at the full budget
};

/// WAR-optimal allocation by bisection on the water level: the budget
/// consumed by the per-machine inversions decreases monotonically in psi,
/// and the problem is strictly convex, so the level with Σμ_i = Ω (within
/// tol·Ω) is the global optimum.  Throws NumericError with the last
/// residual if the iteration cap (200) is hit first.
WaterFillResult water_fill(const FleetSpec& fleet, double tol = 1e-10);

}  // namespace mmon
