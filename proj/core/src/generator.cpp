#include "mmon/generator.hpp"

#include <cmath>

#include "mmon/errors.hpp"

namespace mmon {

void GeneratorMatrix::validate() const {
  const double scale = q.cwiseAbs().maxCoeff();
  for (int i = 0; i < kNumStates; ++i) {
    for (int j = 0; j < kNumStates; ++j) {
      if (i != j && q(i, j) < 0.0) {
        throw NumericError("generator: negative off-diagonal entry", q(i, j));
      }
    }
    const double row_sum = q.row(i).sum();
    if (std::abs(row_sum) > 1e-12 * scale) {
      throw NumericError("generator: row sum out of tolerance", row_sum);
    }
  }
}

GeneratorMatrix build_generator(const MachineParams& params, double mu) {
  params.validate();
  if (!std::isfinite(mu) || mu < 0.0) {
    throw ValidationError("mu: sampling rate must be finite and >= 0");
  }

  Matrix7 q = Matrix7::Zero();
  q(kIdx00, kIdx10) = params.alpha;
  q(kIdx00, kIdx22) = params.lambda;
  q(kIdx10, kIdx00) = params.beta;
  q(kIdx10, kIdx11) = params.lambda + mu;
  q(kIdx11, kIdx01) = params.beta;
  q(kIdx01, kIdx11) = params.alpha;
  q(kIdx01, kIdx00) = mu;
  q(kIdx22, kIdx02) = params.gamma;
  q(kIdx02, kIdx12) = params.alpha;
  q(kIdx02, kIdx00) = mu;
  q(kIdx12, kIdx02) = params.beta;
  q(kIdx12, kIdx11) = mu;
  for (int i = 0; i < kNumStates; ++i) {
    q(i, i) = -q.row(i).sum();
  }
  return GeneratorMatrix{q};
}

}  // namespace mmon
