#include "mmon/stationary.hpp"

#include <array>
#include <cmath>
#include <string>

#include "mmon/errors.hpp"

namespace mmon {

namespace {

// Stationary distribution of a rate/transition matrix by
// Grassmann-Taksar-Heyman state reduction.  Only the non-negative
// off-diagonal entries a(k,j) (rate or probability of k -> j) are read, so
// the same routine serves the generator and the jump-transition matrix.
// The elimination is subtraction-free: every component of the result keeps
// full relative accuracy even when the stationary masses span many orders
// of magnitude, which the ratio metrics downstream depend on.
Vector7 gth_stationary(Matrix7 a, const char* what) {
  std::array<double, kNumStates> out_rate{};
  for (int k = kNumStates - 1; k >= 1; --k) {
    double s = 0.0;
    for (int j = 0; j < k; ++j) s += a(k, j);
    if (!(s > 0.0)) {
      throw NumericError(
          std::string(what) + ": state-reduction pivot vanished", s);
    }
    out_rate[k] = s;
    for (int i = 0; i < k; ++i) {
      const double factor = a(i, k) / s;
      if (factor == 0.0) continue;
      for (int j = 0; j < k; ++j) {
        if (j != i) a(i, j) += factor * a(k, j);
      }
    }
  }
  Vector7 pi;
  pi(0) = 1.0;
  for (int k = 1; k < kNumStates; ++k) {
    double mass = 0.0;
    for (int i = 0; i < k; ++i) mass += pi(i) * a(i, k);
    pi(k) = mass / out_rate[k];
  }
  return pi / pi.sum();
}

void require_irreducible(double mu_entry, const char* what) {
  if (mu_entry == 0.0) {
    throw ValidationError(
        std::string(what) +
        ": chain is reducible at mu = 0; use limits_mu_zero for the "
        "closed-form limits instead");
  }
}

}  // namespace

void ProbabilityVector::normalize_and_check() {
  for (int i = 0; i < kNumStates; ++i) {
    if (p(i) < -1e-12) {
      throw NumericError("probability vector: negative entry", p(i));
    }
    if (p(i) < 0.0) p(i) = 0.0;
  }
  const double total = p.sum();
  if (std::abs(total - 1.0) > 1e-10) {
    throw NumericError("probability vector: mass not 1", total - 1.0);
  }
  p /= total;
}

ProbabilityVector solve_stationary(const GeneratorMatrix& gen) {
  // The (0,1)->(0,0) rate is exactly mu for generators built here.
  require_irreducible(gen.q(kIdx01, kIdx00), "solve_stationary");
  gen.validate();

  ProbabilityVector pi{gth_stationary(gen.q, "solve_stationary")};
  const double residual = (pi.p.transpose() * gen.q).cwiseAbs().maxCoeff();
  if (!pi.p.allFinite() || residual > kStationaryResidualTol) {
    throw NumericError("solve_stationary: residual above tolerance",
                       residual);
  }
  pi.normalize_and_check();
  return pi;
}

ProbabilityVector jump_stationary(const JumpChain& jc) {
  require_irreducible(jc.p_matrix(kIdx01, kIdx00), "jump_stationary");

  // P and P - I share their off-diagonals, which is all GTH reads.
  ProbabilityVector pi{gth_stationary(jc.p_matrix, "jump_stationary")};
  const double residual =
      (pi.p.transpose() * jc.p_matrix - pi.p.transpose()).cwiseAbs().maxCoeff();
  if (!pi.p.allFinite() || residual > kStationaryResidualTol) {
    throw NumericError("jump_stationary: residual above tolerance", residual);
  }
  pi.normalize_and_check();
  return pi;
}

ProbabilityVector jump_from_ctmc(const ProbabilityVector& pi,
                                 const Vector7& eta) {
  for (int i = 0; i < kNumStates; ++i) {
    if (!(eta(i) > 0.0)) {
      throw ValidationError("jump_from_ctmc: eta must be positive");
    }
  }
  Vector7 weighted = eta.cwiseProduct(pi.p);
  const double total = weighted.sum();
  if (!(total > 0.0)) {
    throw ValidationError("jump_from_ctmc: zero normalizer");
  }
  ProbabilityVector out{weighted / total};
  out.normalize_and_check();
  return out;
}

}  // namespace mmon
