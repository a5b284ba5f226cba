#pragma once

#include <Eigen/Dense>

#include "mmon/machine_params.hpp"
#include "mmon/state_space.hpp"

namespace mmon {

using Matrix7 = Eigen::Matrix<double, kNumStates, kNumStates>;
using Vector7 = Eigen::Matrix<double, kNumStates, 1>;

/// CTMC generator of the joint (machine, estimator) chain. Off-diagonal
/// entries are transition rates; each diagonal entry is the negative row sum.
struct GeneratorMatrix {
  Matrix7 q;

  /// Throws NumericError if a row sum exceeds 1e-12 * max|entry| or an
  /// off-diagonal entry is negative.
  void validate() const;
};

/// Builds the generator for one machine sampled at rate mu.
///
/// Transitions (canonical edge list):
///   (0,0)->(1,0): alpha    (0,0)->(2,2): lambda
///   (1,0)->(0,0): beta     (1,0)->(1,1): lambda+mu
///   (1,1)->(0,1): beta
///   (0,1)->(1,1): alpha    (0,1)->(0,0): mu
///   (2,2)->(0,2): gamma
///   (0,2)->(1,2): alpha    (0,2)->(0,0): mu
///   (1,2)->(0,2): beta     (1,2)->(1,1): mu
GeneratorMatrix build_generator(const MachineParams& params, double mu);

}  // namespace mmon
