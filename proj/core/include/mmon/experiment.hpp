#pragma once

#include <string>
#include <vector>

#include "mmon/csv.hpp"
#include "mmon/fleet.hpp"
#include "mmon/machine_params.hpp"
#include "mmon/similarity_map.hpp"
#include "mmon/simulator.hpp"
#include "mmon/waf_allocator.hpp"

namespace mmon {

/// Sampling-rate allocation policies compared in budget sweeps.
enum class Policy { kWarOpt, kWafOpt, kUniform, kWeighted };

std::string policy_name(Policy policy);

/// Inverse of policy_name; throws ValidationError for unknown names.
Policy policy_from_name(const std::string& name);

/// Allocation a policy prescribes at the fleet's current budget:
/// uniform Ω/N, weighted w_i·Ω, or the WAR/WAF optimizers.
Allocation policy_allocation(const FleetSpec& fleet, Policy policy,
                             const PgdConfig& pgd_cfg);

/// Analytic metric profile of one machine across sampling rates.
/// Columns: mu, freshness, far, frr, far_plus_frr, staleness.  The μ=0
/// row reports the no-sampling limits (busy-equivalent semantics); μ>0
/// rows come from the stationary solve under the given similarity map.
Table run_mu_sweep(const MachineParams& machine, const SimilarityMap& map,
                   const std::vector<double>& grid);

/// Policy comparison across budgets.  Columns: omega, policy, war, waf,
/// then one rate column per machine; rows ordered by Ω, then policy name.
/// Solver errors propagate annotated with the grid point and policy.
Table run_budget_sweep(const FleetSpec& fleet, const std::vector<double>& grid,
                       const std::vector<Policy>& policies,
                       const PgdConfig& pgd_cfg);

/// One metric's analytic-vs-simulated comparison.
struct MetricCheck {
  std::string name;
  double analytic = 0.0;
  double simulated = 0.0;  ///< mean of the per-replication estimates
  double half_width = 0.0; ///< 95% CI half-width of that mean
  bool pass = false;       ///< |simulated − analytic| ≤ 3·half_width
};

/// Side-by-side report for freshness, FAR, and FRR.
struct ValidationReport {
  std::vector<MetricCheck> checks;
  bool all_pass = false;

  /// Columns: metric, analytic, simulated, half_width, status.
  Table to_table() const;
};

/// Runs the simulator and checks it against the analytic values — the
/// stationary solve for μ>0, the no-sampling limits for μ=0 — at three
/// CI half-widths per metric.  For μ=0 runs prefer warmup=0 and many
/// replications: each path sees at most one acceptance, so FAR
/// information lives across replications, not within one.
ValidationReport run_validation(const MachineParams& machine, double mu,
                                const SimilarityMap& map,
                                const SimConfig& sim_cfg);

}  // namespace mmon
