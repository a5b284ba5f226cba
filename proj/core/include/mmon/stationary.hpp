#pragma once

#include "mmon/generator.hpp"
#include "mmon/jump_chain.hpp"

namespace mmon {

/// Residual tolerance for stationary solves: ||pi Q||_inf and
/// ||pi P - pi||_inf must not exceed this.
inline constexpr double kStationaryResidualTol = 1e-10;

/// Distribution over the seven system states in canonical order.
struct ProbabilityVector {
  Vector7 p;

  double operator[](int i) const { return p(i); }

  /// Throws NumericError if an entry is below -1e-12 or the total strays
  /// from 1 by more than 1e-10; entries in [-1e-12, 0) are clamped to 0.
  void normalize_and_check();
};

/// Solves pi Q = 0, sum(pi) = 1 by Grassmann-Taksar-Heyman state reduction.
/// The elimination is subtraction-free, so each component of pi is accurate
/// in a relative sense even when the masses span many orders of magnitude.
///
/// Refuses the mu = 0 chain (reducible; the (0,1)->(0,0) entry, which equals
/// mu by construction, is zero) with a ValidationError pointing the caller
/// at limits_mu_zero.
ProbabilityVector solve_stationary(const GeneratorMatrix& gen);

/// Left fixed point of the jump-chain transition matrix, normalized.
/// Same mu = 0 refusal as solve_stationary.
ProbabilityVector jump_stationary(const JumpChain& jc);

/// Jump-chain stationary distribution from the CTMC one:
/// normalize(eta_i * pi_i), componentwise.
ProbabilityVector jump_from_ctmc(const ProbabilityVector& pi,
                                 const Vector7& eta);

}  // namespace mmon
