#pragma once

#include <array>

#include "mmon/jump_chain.hpp"
#include "mmon/machine_params.hpp"
#include "mmon/similarity_map.hpp"
#include "mmon/state_space.hpp"
#include "mmon/stationary.hpp"

namespace mmon {

/// Freshness / false-acceptance / false-rejection bundle.
struct MetricTriple {
  double freshness = 0.0;
  double far = 0.0;
  double frr = 0.0;

  /// All three values must lie in [0,1] (within 1e-12 slack).
  void validate() const;
};

/// Acceptance/rejection partition of the state space together with the
/// false subsets the decision metrics are conditioned on.
struct DecisionSets {
  std::array<bool, kNumStates> s_a{};   ///< allocator accepts the job
  std::array<bool, kNumStates> s_fa{};  ///< accepted while the machine is busy
  std::array<bool, kNumStates> s_r{};   ///< allocator rejects the job
  std::array<bool, kNumStates> s_fr{};  ///< rejected while the machine is free

  /// The partition used throughout: accept in (0,0) and (1,0), reject in
  /// every other state; false acceptance in (1,0); false rejection in
  /// (0,1) and (0,2).
  static DecisionSets canonical();

  /// Checks S_FA ⊆ S_A, S_FR ⊆ S_R, and that S_A, S_R partition the space.
  void validate() const;
};

/// A pair of decision-error ratios.
struct FarFrr {
  double far = 0.0;
  double frr = 0.0;
};

/// Expected similarity Σ_s π_s C(s) of the estimate under stationarity.
double freshness_from_pi(const ProbabilityVector& pi, const SimilarityMap& map);

/// Decision-error ratios via the jump chain: every decision happens at an
/// external arrival, so state i is weighted by π̃_i · P(step is an arrival
/// | state i).  Throws UndefinedRatioError when a conditioning set carries
/// no weight (e.g. λ=0, where the allocator never decides anything).
FarFrr far_frr_from_jump(const JumpChain& jc, const ProbabilityVector& pi_tilde,
                         const DecisionSets& sets);

/// Decision-error ratios straight from the CTMC stationary distribution:
/// Poisson arrivals see time averages, so plain probability ratios apply.
FarFrr far_frr_from_ctmc(const ProbabilityVector& pi, const DecisionSets& sets);

/// Closed-form false acceptance ratio α/(μ+κ).
double far_closed(const MachineParams& params, double mu);

/// Closed-form false rejection ratio for general γ.  Reduces to
/// β/(μ+α+β) when γ=β and tends to β/(α+β) as μ→0.
double frr_closed(const MachineParams& params, double mu);

/// Closed-form freshness under the busy-equivalent similarity map for a
/// machine whose two busy flavors recover at the same rate (γ treated
/// as equal to β; γ itself is ignored).
double freshness_bg(const MachineParams& params, double mu);

/// Metric values in the no-sampling limit μ→0⁺, machine started fresh:
/// freshness α/(α+β), FAR α/κ, FRR β/(α+β).
MetricTriple limits_mu_zero(const MachineParams& params);

/// Slack FAR + FRR − E[staleness] of the union bound under the
/// busy-equivalent map; non-negative for every valid machine.
double staleness_bound_gap(const MachineParams& params, double mu);

/// Sign witness (κ−α)² + α(λ−α) for the γ=β machine: when non-negative,
/// staleness falls monotonically in the sampling rate; when negative,
/// staleness initially rises as sampling is switched on.
double monotonicity_condition(const MachineParams& params);

/// d(staleness)/dμ in closed form for the γ=β machine.  Its sign at μ=0
/// is the opposite of monotonicity_condition's sign.
double staleness_derivative(const MachineParams& params, double mu);

}  // namespace mmon
