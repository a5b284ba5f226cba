#include "mmon/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mmon/errors.hpp"
#include "mmon/generator.hpp"
#include "mmon/metrics.hpp"
#include "mmon/stationary.hpp"
#include "mmon/war_allocator.hpp"

namespace mmon {
namespace {

void check_grid(const std::vector<double>& grid, double lowest,
                const char* what) {
  if (grid.empty()) {
    throw ValidationError(std::string(what) + " grid must not be empty");
  }
  double previous = -std::numeric_limits<double>::infinity();
  for (double value : grid) {
    if (!(std::isfinite(value) && value >= lowest)) {
      throw ValidationError(std::string(what) + " grid values must be finite " +
                            (lowest > 0.0 ? "and positive" : "and non-negative"));
    }
    if (value <= previous) {
      throw ValidationError(std::string(what) +
                            " grid must be strictly increasing");
    }
    previous = value;
  }
}

MetricTriple analytic_triple(const MachineParams& machine, double mu,
                             const SimilarityMap& map) {
  if (mu == 0.0) return limits_mu_zero(machine);
  const GeneratorMatrix gen = build_generator(machine, mu);
  const ProbabilityVector pi = solve_stationary(gen);
  const FarFrr ratios = far_frr_from_ctmc(pi, DecisionSets::canonical());
  MetricTriple triple;
  triple.freshness = freshness_from_pi(pi, map);
  triple.far = ratios.far;
  triple.frr = ratios.frr;
  return triple;
}

}  // namespace

std::string policy_name(Policy policy) {
  switch (policy) {
    case Policy::kWarOpt:
      return "war_opt";
    case Policy::kWafOpt:
      return "waf_opt";
    case Policy::kUniform:
      return "uniform";
    case Policy::kWeighted:
      return "weighted";
  }
  throw ValidationError("unknown policy value");
}

Policy policy_from_name(const std::string& name) {
  if (name == "war_opt") return Policy::kWarOpt;
  if (name == "waf_opt") return Policy::kWafOpt;
  if (name == "uniform") return Policy::kUniform;
  if (name == "weighted") return Policy::kWeighted;
  throw ValidationError(
      "unknown policy '" + name +
      "' (expected war_opt, waf_opt, uniform, or weighted)");
}

Allocation policy_allocation(const FleetSpec& fleet, Policy policy,
                             const PgdConfig& pgd_cfg) {
  fleet.validate();
  const std::size_t n = fleet.size();
  Allocation alloc;
  switch (policy) {
    case Policy::kUniform:
      alloc.mu.assign(n, fleet.budget / static_cast<double>(n));
      break;
    case Policy::kWeighted:
      alloc.mu.resize(n);
      for (std::size_t i = 0; i < n; ++i) alloc.mu[i] = fleet.w[i] * fleet.budget;
      break;
    case Policy::kWarOpt:
      alloc = water_fill(fleet).alloc;
      break;
    case Policy::kWafOpt:
      alloc = multi_start_waf(fleet, pgd_cfg).alloc;
      break;
  }
  return alloc;
}

Table run_mu_sweep(const MachineParams& machine, const SimilarityMap& map,
                   const std::vector<double>& grid) {
  machine.validate();
  check_grid(grid, 0.0, "sampling-rate");
  Table table;
  table.header = {"mu", "freshness", "far", "frr", "far_plus_frr", "staleness"};
  for (double mu : grid) {
    const MetricTriple triple = analytic_triple(machine, mu, map);
    table.add_row({format_number(mu), format_number(triple.freshness),
                   format_number(triple.far), format_number(triple.frr),
                   format_number(triple.far + triple.frr),
                   format_number(1.0 - triple.freshness)});
  }
  return table;
}

Table run_budget_sweep(const FleetSpec& fleet, const std::vector<double>& grid,
                       const std::vector<Policy>& policies,
                       const PgdConfig& pgd_cfg) {
  fleet.validate();
  check_grid(grid, std::numeric_limits<double>::min(), "budget");
  if (policies.empty()) {
    throw ValidationError("budget sweep needs at least one policy");
  }
  std::vector<Policy> ordered(policies);
  std::sort(ordered.begin(), ordered.end(),
            [](Policy a, Policy b) { return policy_name(a) < policy_name(b); });
  ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());

  Table table;
  table.header = {"omega", "policy", "war", "waf"};
  for (std::size_t i = 1; i <= fleet.size(); ++i) {
    table.header.push_back("mu_" + std::to_string(i));
  }
  for (double omega : grid) {
    FleetSpec scaled = fleet;
    scaled.budget = omega;
    for (Policy policy : ordered) {
      Allocation alloc;
      try {
        alloc = policy_allocation(scaled, policy, pgd_cfg);
      } catch (const NumericError& e) {
        throw NumericError("budget sweep (omega=" + format_number(omega) +
                               ", policy=" + policy_name(policy) +
                               "): " + e.what(),
                           e.residual());
      } catch (const ValidationError& e) {
        throw ValidationError("budget sweep (omega=" + format_number(omega) +
                              ", policy=" + policy_name(policy) +
                              "): " + e.what());
      }
      std::vector<std::string> row = {
          format_number(omega), policy_name(policy),
          format_number(war_value(scaled, alloc)),
          format_number(waf_value(scaled, alloc))};
      for (double mu : alloc.mu) row.push_back(format_number(mu));
      table.add_row(std::move(row));
    }
  }
  return table;
}

Table ValidationReport::to_table() const {
  Table table;
  table.header = {"metric", "analytic", "simulated", "half_width", "status"};
  for (const MetricCheck& check : checks) {
    table.add_row({check.name, format_number(check.analytic),
                   format_number(check.simulated),
                   format_number(check.half_width),
                   check.pass ? "pass" : "fail"});
  }
  return table;
}

ValidationReport run_validation(const MachineParams& machine, double mu,
                                const SimilarityMap& map,
                                const SimConfig& sim_cfg) {
  const MetricTriple analytic = analytic_triple(machine, mu, map);
  const SimResult sim = simulate(machine, mu, map, sim_cfg);

  const auto check_one = [](std::string name, double expected, double mean,
                            double half_width) {
    MetricCheck check;
    check.name = std::move(name);
    check.analytic = expected;
    check.simulated = mean;
    check.half_width = half_width;
    check.pass = std::abs(mean - expected) <= 3.0 * half_width;
    return check;
  };

  ValidationReport report;
  report.checks.push_back(check_one("freshness", analytic.freshness,
                                    sim.mean.freshness,
                                    sim.half_width.freshness));
  report.checks.push_back(
      check_one("far", analytic.far, sim.mean.far, sim.half_width.far));
  report.checks.push_back(
      check_one("frr", analytic.frr, sim.mean.frr, sim.half_width.frr));
  report.all_pass = true;
  for (const MetricCheck& check : report.checks) {
    report.all_pass = report.all_pass && check.pass;
  }
  return report;
}

}  // namespace mmon
