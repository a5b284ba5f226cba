#pragma once

namespace mmon {

/// Exponential rates of one Markov machine and its job streams.
struct MachineParams {
  double alpha;   ///< internal job arrival rate (machine free -> busy)
  double beta;    ///< internal job completion rate
  double gamma;   ///< external job completion rate
  double lambda;  ///< external job arrival rate at the resource allocator

  /// kappa = lambda + alpha + beta.
  double kappa() const { return lambda + alpha + beta; }

  /// Throws ValidationError unless alpha, beta, gamma > 0, lambda >= 0,
  /// all finite.
  void validate() const;
};

/// Machine with a single job-processing rate (gamma = beta), the fleet model.
inline MachineParams make_bg_machine(double alpha, double beta,
                                     double lambda) {
  return MachineParams{alpha, beta, beta, lambda};
}

}  // namespace mmon
