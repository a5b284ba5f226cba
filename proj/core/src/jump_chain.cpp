#include "mmon/jump_chain.hpp"

#include <algorithm>
#include <cmath>

#include "mmon/errors.hpp"

namespace mmon {

void JumpChain::validate(double lambda) const {
  for (int i = 0; i < kNumStates; ++i) {
    const double row_sum = p_matrix.row(i).sum();
    if (std::abs(row_sum - 1.0) > 1e-12) {
      throw NumericError("jump chain: row not stochastic", row_sum - 1.0);
    }
    const double mass = p_ext(i) * eta(i);
    const double tol = 1e-12 * std::max(lambda, 1.0);
    if (std::abs(mass - lambda) > tol) {
      throw NumericError("jump chain: p_ext*eta != lambda", mass - lambda);
    }
  }
}

JumpChain build_jump_chain(const MachineParams& params, double mu) {
  const GeneratorMatrix gen = build_generator(params, mu);
  if (mu + params.lambda +
          std::min({params.alpha, params.beta, params.gamma}) <=
      0.0) {
    throw ValidationError("jump chain: a state has zero total event rate");
  }

  JumpChain jc;
  for (int i = 0; i < kNumStates; ++i) {
    const int machine = kStateOrder[i].machine;
    const double own_rate = machine == 0   ? params.alpha
                            : machine == 1 ? params.beta
                                           : params.gamma;
    jc.eta(i) = mu + params.lambda + own_rate;
    jc.p_ext(i) = params.lambda / jc.eta(i);
    for (int j = 0; j < kNumStates; ++j) {
      if (j != i) jc.p_matrix(i, j) = gen.q(i, j) / jc.eta(i);
    }
    // Self-loop probability equals 1 + Q_ii / eta_i.
    jc.p_matrix(i, i) = 1.0 + gen.q(i, i) / jc.eta(i);
  }
  jc.validate(params.lambda);
  return jc;
}

}  // namespace mmon
