#include "mmon/metrics.hpp"

#include <cmath>
#include <string>

#include "mmon/errors.hpp"
#include "mmon/generator.hpp"

namespace mmon {
namespace {

constexpr double kProbSlack = 1e-12;

// Below this mass a conditioning set is considered empty and the ratio
// undefined rather than rounded to 0/0.
constexpr double kRatioFloor = 1e-300;

void check_unit_interval(double value, const char* name) {
  if (!(value >= -kProbSlack && value <= 1.0 + kProbSlack)) {
    throw ValidationError(std::string(name) + " outside [0,1]: " +
                          std::to_string(value));
  }
}

void check_mu(double mu) {
  if (!(std::isfinite(mu) && mu >= 0.0)) {
    throw ValidationError("sampling rate must be finite and non-negative");
  }
}

double ratio(double num, double den, const char* what) {
  if (den < kRatioFloor) {
    throw UndefinedRatioError(std::string(what) +
                              " undefined: conditioning set carries no weight");
  }
  return num / den;
}

}  // namespace

void MetricTriple::validate() const {
  check_unit_interval(freshness, "freshness");
  check_unit_interval(far, "far");
  check_unit_interval(frr, "frr");
}

DecisionSets DecisionSets::canonical() {
  DecisionSets sets;
  sets.s_a[kIdx00] = sets.s_a[kIdx10] = true;
  sets.s_fa[kIdx10] = true;
  for (int i = 0; i < kNumStates; ++i) sets.s_r[i] = !sets.s_a[i];
  sets.s_fr[kIdx01] = sets.s_fr[kIdx02] = true;
  return sets;
}

void DecisionSets::validate() const {
  for (int i = 0; i < kNumStates; ++i) {
    if (s_fa[i] && !s_a[i]) {
      throw ValidationError("false-acceptance state outside acceptance set");
    }
    if (s_fr[i] && !s_r[i]) {
      throw ValidationError("false-rejection state outside rejection set");
    }
    if (s_a[i] == s_r[i]) {
      throw ValidationError(
          "acceptance and rejection sets must partition the state space");
    }
  }
}

double freshness_from_pi(const ProbabilityVector& pi, const SimilarityMap& map) {
  double total = 0.0;
  for (int i = 0; i < kNumStates; ++i) {
    if (map.fresh_at(i)) total += pi[i];
  }
  return total;
}

FarFrr far_frr_from_jump(const JumpChain& jc, const ProbabilityVector& pi_tilde,
                         const DecisionSets& sets) {
  sets.validate();
  double accept = 0.0, false_accept = 0.0, reject = 0.0, false_reject = 0.0;
  for (int i = 0; i < kNumStates; ++i) {
    const double weight = jc.p_ext[i] * pi_tilde[i];
    if (sets.s_a[i]) accept += weight;
    if (sets.s_fa[i]) false_accept += weight;
    if (sets.s_r[i]) reject += weight;
    if (sets.s_fr[i]) false_reject += weight;
  }
  return {ratio(false_accept, accept, "FAR"),
          ratio(false_reject, reject, "FRR")};
}

FarFrr far_frr_from_ctmc(const ProbabilityVector& pi, const DecisionSets& sets) {
  sets.validate();
  double accept = 0.0, false_accept = 0.0, reject = 0.0, false_reject = 0.0;
  for (int i = 0; i < kNumStates; ++i) {
    if (sets.s_a[i]) accept += pi[i];
    if (sets.s_fa[i]) false_accept += pi[i];
    if (sets.s_r[i]) reject += pi[i];
    if (sets.s_fr[i]) false_reject += pi[i];
  }
  return {ratio(false_accept, accept, "FAR"),
          ratio(false_reject, reject, "FRR")};
}

double far_closed(const MachineParams& params, double mu) {
  params.validate();
  check_mu(mu);
  return params.alpha / (mu + params.kappa());
}

double frr_closed(const MachineParams& params, double mu) {
  params.validate();
  check_mu(mu);
  const double a = params.alpha;
  const double b = params.beta;
  const double g = params.gamma;
  const double l = params.lambda;
  const double k = params.kappa();
  // At μ=0 (and only there) the general form can degenerate to 0/0; the
  // continuous limit is β/(α+β) independent of γ and λ.
  if (mu == 0.0) return b / (a + b);
  const double beta_tilde = l * b * (l + b) + g * (l * b + l * a + a * k);
  const double num = g * b * (mu * (l + a) + l * k);
  const double den =
      (a * g + l * b) * mu * mu + beta_tilde * mu + g * l * (b + a) * k;
  return num / den;
}

double freshness_bg(const MachineParams& params, double mu) {
  params.validate();
  check_mu(mu);
  const double a = params.alpha;
  const double b = params.beta;
  const double l = params.lambda;
  const double k = params.kappa();
  // 0/0 at μ=0 when λ=0; the limit μ→0 at fixed λ>0 is α/(α+β) and we
  // keep that value on the λ=0 boundary as well (machine started fresh).
  if (mu == 0.0) return a / (a + b);
  const double num = k * mu * mu + (k * k - 2.0 * a * b) * mu + l * a * k;
  const double den = k * mu * mu + (k * k + b * l) * mu + l * (a + b) * k;
  return num / den;
}

MetricTriple limits_mu_zero(const MachineParams& params) {
  params.validate();
  MetricTriple triple;
  triple.freshness = params.alpha / (params.alpha + params.beta);
  triple.far = params.alpha / params.kappa();
  triple.frr = params.beta / (params.alpha + params.beta);
  return triple;
}

double staleness_bound_gap(const MachineParams& params, double mu) {
  params.validate();
  check_mu(mu);
  if (mu == 0.0) {
    const MetricTriple limits = limits_mu_zero(params);
    return limits.far + limits.frr - (1.0 - limits.freshness);
  }
  const GeneratorMatrix gen = build_generator(params, mu);
  const ProbabilityVector pi = solve_stationary(gen);
  const FarFrr ratios = far_frr_from_ctmc(pi, DecisionSets::canonical());
  const double staleness =
      1.0 - freshness_from_pi(pi, SimilarityMap::busy_equiv());
  return ratios.far + ratios.frr - staleness;
}

double monotonicity_condition(const MachineParams& params) {
  params.validate();
  const double a = params.alpha;
  const double l = params.lambda;
  const double k = params.kappa();
  return (k - a) * (k - a) + a * (l - a);
}

double staleness_derivative(const MachineParams& params, double mu) {
  params.validate();
  check_mu(mu);
  const double a = params.alpha;
  const double b = params.beta;
  const double l = params.lambda;
  const double k = params.kappa();
  if (l == 0.0) {
    // Simplified limit of the general form; also covers μ=0, where the
    // general denominator vanishes with λ.
    const double s = mu + k;
    return -2.0 * a * b / (k * s * s);
  }
  const double num = (l + 2.0 * a) * mu * mu + 2.0 * l * k * mu +
                     l * monotonicity_condition(params);
  const double den = k * mu * mu + (k * k + b * l) * mu + l * (a + b) * k;
  return -b * k * num / (den * den);
}

}  // namespace mmon
