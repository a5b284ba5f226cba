#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mmon/experiment.hpp"
#include "mmon/fleet.hpp"
#include "mmon/machine_params.hpp"
#include "mmon/similarity_map.hpp"
#include "mmon/simulator.hpp"
#include "mmon/waf_allocator.hpp"

namespace mmon {

/// Sweep request from a config document.
struct SweepSpec {
  enum class Kind { kMu, kBudget };
  Kind kind = Kind::kMu;
  std::vector<double> grid;
};

/// Parsed configuration.  Single-machine commands use machines[0] (and
/// require exactly one machine); fleet commands assemble a FleetSpec from
/// machines/weights/w_a/w_r/budget.
struct RunConfig {
  std::vector<MachineParams> machines;
  std::vector<double> weights;  ///< empty → uniform 1/N
  double w_a = 0.5;
  double w_r = 0.5;
  double budget = 1.0;
  std::optional<double> mu{};        ///< single-machine sampling rate
  std::string map_name = "busy_equiv";
  std::optional<SweepSpec> sweep{};
  std::vector<Policy> policies;      ///< empty → all four
  SimConfig sim;
  PgdConfig pgd;

  /// machines[0]; throws unless exactly one machine is configured.
  const MachineParams& single_machine() const;

  /// The configured μ; throws when the document omits it.
  double require_mu() const;

  /// Fleet assembled from the document (uniform weights when omitted).
  FleetSpec fleet() const;

  /// Similarity map named by `map`: "exact" or "busy_equiv".
  SimilarityMap map() const;

  /// Configured policies, defaulting to all four.
  std::vector<Policy> effective_policies() const;

  /// μ grid for sweep-mu: the configured grid (kind must be "mu") or the
  /// default 0, 0.05, …, 10.
  std::vector<double> mu_grid() const;

  /// Ω grid for sweep-budget: the configured grid (kind must be
  /// "budget") or the default 20 evenly spaced points on [0.5, 10].
  std::vector<double> budget_grid() const;
};

/// Parses a JSON config document.  Unknown keys anywhere are rejected so
/// typos fail loudly instead of silently using defaults.
RunConfig parse_config_text(const std::string& text);

/// Reads and parses a config file.
RunConfig load_config(const std::string& path);

}  // namespace mmon
