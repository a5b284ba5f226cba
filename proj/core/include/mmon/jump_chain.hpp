#pragma once

#include "mmon/generator.hpp"
#include "mmon/machine_params.hpp"

namespace mmon {

/// Discrete jump chain of the joint CTMC, including the fictitious
/// self-transitions: every pending event (arrival, completion, sample) is a
/// step, so each state's total event rate eta_i is mu + lambda + the
/// machine's own rate (alpha, beta, or gamma).
struct JumpChain {
  Matrix7 p_matrix;  ///< row-stochastic, self-loops included
  Vector7 eta;       ///< per-state total event rate
  Vector7 p_ext;     ///< per-state probability a step is an external arrival

  /// Throws NumericError if a row sum strays from 1 by more than 1e-12 or
  /// p_ext[i]*eta[i] differs from lambda by more than 1e-12 relative.
  void validate(double lambda) const;
};

/// Requires mu + lambda + min(alpha, beta, gamma) > 0 so every state has a
/// positive event rate.
JumpChain build_jump_chain(const MachineParams& params, double mu);

}  // namespace mmon
