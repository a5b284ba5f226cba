#include "mmon/waf_allocator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mmon/errors.hpp"
#include "mmon/metrics.hpp"
#include "mmon/rng.hpp"
#include "mmon/simplex.hpp"

namespace mmon {
namespace {

// Freshness of one machine as the allocators see it: the closed form for
// γ=β, switched to its λ→0 limit when λ=0 so the value stays continuous
// in μ down to 0 (the generic form degenerates to 0/0 there).
double waf_freshness_one(const MachineParams& m, double mu) {
  if (m.lambda == 0.0) {
    const double k = m.kappa();
    return 1.0 - 2.0 * m.alpha * m.beta / (k * (mu + k));
  }
  return freshness_bg(m, mu);
}

double weighted_staleness(const FleetSpec& fleet, const std::vector<double>& mu) {
  double total = 0.0;
  for (std::size_t i = 0; i < fleet.size(); ++i) {
    total += fleet.w[i] * (1.0 - waf_freshness_one(fleet.machines[i], mu[i]));
  }
  return total;
}

std::vector<double> staleness_gradient(const FleetSpec& fleet,
                                       const std::vector<double>& mu) {
  std::vector<double> grad(fleet.size());
  for (std::size_t i = 0; i < fleet.size(); ++i) {
    grad[i] = fleet.w[i] * staleness_derivative(fleet.machines[i], mu[i]);
  }
  return grad;
}

// |d²staleness/dμ²| for one machine in the factored form
// s(μ) = l·(μ+a)/(μ²+bμ+c)  ⇒  s''(μ) = 2l·(μ³+3aμ²+3(ab−c)μ+ab²−ac−bc)
//                                         / (μ²+bμ+c)³.
struct CurvatureForm {
  double l, a, b, c;

  double abs_second(double mu) const {
    const double q = mu * mu + b * mu + c;
    const double num =
        mu * mu * mu + 3.0 * a * mu * mu + 3.0 * (a * b - c) * mu +
        (a * b * b - a * c - b * c);
    return 2.0 * l * std::abs(num) / (q * q * q);
  }
};

constexpr double kCurvatureSafety = 1.25;

void run_descent(const FleetSpec& fleet, const std::vector<double>& start,
                 const PgdConfig& cfg, double smoothness, WafSolution& out) {
  const double omega = fleet.budget;
  const double tau = cfg.step ? *cfg.step : 0.9 / smoothness;
  if (!(std::isfinite(tau) && tau > 0.0)) {
    throw ValidationError("descent step must be finite and positive");
  }
  if (!(tau * smoothness < 1.0)) {
    throw ValidationError("descent step must be below 1/L for convergence");
  }
  if (cfg.max_iters < 1) {
    throw ValidationError("at least one descent iteration is required");
  }
  const double tol = cfg.grad_tol ? *cfg.grad_tol : 1e-8 * omega;

  std::vector<double> mu = project_simplex(start, omega);
  double h = weighted_staleness(fleet, mu);
  double stationarity = std::numeric_limits<double>::infinity();
  std::uint64_t iterations = 0;
  while (iterations < cfg.max_iters) {
    const std::vector<double> grad = staleness_gradient(fleet, mu);
    std::vector<double> moved_point(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) {
      moved_point[i] = mu[i] - tau * grad[i];
    }
    const std::vector<double> next = project_simplex(moved_point, omega);
    double sq = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
      sq += (next[i] - mu[i]) * (next[i] - mu[i]);
    }
    const double h_next = weighted_staleness(fleet, next);
    if (h_next > h + 1e-12 * std::max(1.0, std::abs(h))) {
      throw NumericError("descent step increased the objective", h_next - h);
    }
    mu = next;
    h = h_next;
    ++iterations;
    stationarity = std::sqrt(sq) / tau;
    if (stationarity <= tol) break;
  }

  out.alloc.mu = std::move(mu);
  out.waf = 0.0;
  for (std::size_t i = 0; i < fleet.size(); ++i) {
    out.waf +=
        fleet.w[i] * waf_freshness_one(fleet.machines[i], out.alloc.mu[i]);
  }
  out.stationarity = stationarity;
  out.iterations = iterations;
}

}  // namespace

std::string waf_origin_label(int origin, std::size_t n_machines) {
  const int n = static_cast<int>(n_machines);
  if (origin < 0) return "unspecified";
  if (origin < n) return "vertex-" + std::to_string(origin);
  if (origin == n) return "center";
  return "random-" + std::to_string(origin - n - 1);
}

double waf_value(const FleetSpec& fleet, const Allocation& alloc) {
  fleet.validate();
  alloc.validate(fleet);
  double total = 0.0;
  for (std::size_t i = 0; i < fleet.size(); ++i) {
    total += fleet.w[i] * waf_freshness_one(fleet.machines[i], alloc.mu[i]);
  }
  return total;
}

std::vector<double> staleness_gradient_vec(const FleetSpec& fleet,
                                           const Allocation& alloc) {
  fleet.validate();
  alloc.validate(fleet);
  return staleness_gradient(fleet, alloc.mu);
}

double curvature_bound(const MachineParams& params) {
  params.validate();
  const double alpha = params.alpha;
  const double beta = params.beta;
  const double lambda = params.lambda;
  const double k = params.kappa();
  if (lambda == 0.0) {
    // s(μ) = 2αβ/(κ(μ+κ)): |s''| peaks at μ=0.
    return kCurvatureSafety * 4.0 * alpha * beta / (k * k * k * k);
  }
  const CurvatureForm f{beta * (lambda + 2.0 * alpha) / k,
                        lambda * k / (lambda + 2.0 * alpha),
                        (k * k + beta * lambda) / k, lambda * (alpha + beta)};

  // Past μ_cap an explicit bound dominates: |num| ≤ μ³·M and q ≥ μ² for
  // μ ≥ 1, so |s''| ≤ 2lM/μ³ there.
  const double m_coef = 1.0 + 3.0 * f.a + 3.0 * std::abs(f.a * f.b - f.c) +
                        std::abs(f.a * f.b * f.b - f.a * f.c - f.b * f.c);
  const double mu_cap = std::max(1.0, std::cbrt(2.0 * f.l * m_coef));
  const double tail = 2.0 * f.l * m_coef / (mu_cap * mu_cap * mu_cap);

  // Linear grid for the bulk plus a log grid for features near zero.
  std::vector<double> grid;
  constexpr int kLinearPoints = 2048;
  constexpr int kLogPoints = 512;
  grid.reserve(kLinearPoints + kLogPoints + 1);
  for (int j = 0; j <= kLinearPoints; ++j) {
    grid.push_back(mu_cap * static_cast<double>(j) / kLinearPoints);
  }
  const double log_lo = std::log(1e-9 * mu_cap);
  const double log_hi = std::log(mu_cap);
  for (int j = 0; j < kLogPoints; ++j) {
    grid.push_back(
        std::exp(log_lo + (log_hi - log_lo) * j / (kLogPoints - 1.0)));
  }
  std::sort(grid.begin(), grid.end());

  double best = tail;
  std::size_t best_idx = 0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double value = f.abs_second(grid[j]);
    if (value > best) {
      best = value;
      best_idx = j;
    }
  }

  // Zoom between the winning point's neighbors to polish the peak.
  double lo = grid[best_idx > 0 ? best_idx - 1 : 0];
  double hi = grid[std::min(best_idx + 1, grid.size() - 1)];
  for (int round = 0; round < 40 && hi > lo; ++round) {
    constexpr int kZoomPoints = 8;
    int arg = 0;
    double local_best = -1.0;
    for (int j = 0; j <= kZoomPoints; ++j) {
      const double mu = lo + (hi - lo) * j / kZoomPoints;
      const double value = f.abs_second(mu);
      best = std::max(best, value);
      if (value > local_best) {
        local_best = value;
        arg = j;
      }
    }
    const double width = (hi - lo) / kZoomPoints;
    const double center = lo + width * arg;
    lo = std::max(lo, center - width);
    hi = std::min(hi, center + width);
  }
  return kCurvatureSafety * best;
}

double estimate_smoothness(const FleetSpec& fleet) {
  // Deliberately does not require normalized weights: L is linear in w.
  if (fleet.machines.empty() || fleet.w.size() != fleet.machines.size()) {
    throw ValidationError("fleet must pair every machine with a weight");
  }
  double smoothness = 0.0;
  for (std::size_t i = 0; i < fleet.size(); ++i) {
    if (!(std::isfinite(fleet.w[i]) && fleet.w[i] >= 0.0)) {
      throw ValidationError("machine weights must be finite and non-negative");
    }
    smoothness =
        std::max(smoothness, fleet.w[i] * curvature_bound(fleet.machines[i]));
  }
  return smoothness;
}

WafSolution pgd(const FleetSpec& fleet, const Allocation& init,
                const PgdConfig& cfg) {
  fleet.validate();
  init.validate(fleet);
  if (std::abs(init.total() - fleet.budget) > 1e-9 * fleet.budget) {
    throw ValidationError("descent must start on the budget simplex");
  }
  WafSolution solution;
  run_descent(fleet, init.mu, cfg, estimate_smoothness(fleet), solution);
  return solution;
}

WafSolution multi_start_waf(const FleetSpec& fleet, const PgdConfig& cfg) {
  fleet.validate();
  bool any_improvable = false;
  for (const MachineParams& m : fleet.machines) {
    any_improvable = any_improvable || monotonicity_condition(m) > 0.0;
  }
  if (!any_improvable) {
    throw ValidationError(
        "no machine has a positive monotonicity condition: staleness may "
        "rise with sampling everywhere, so exhausting the budget (and the "
        "simplex search) is not justified");
  }

  const std::size_t n = fleet.size();
  const double omega = fleet.budget;
  std::vector<std::vector<double>> starts;
  starts.reserve(n + 1 + cfg.restarts);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> vertex(n, 0.0);
    vertex[i] = omega;
    starts.push_back(std::move(vertex));
  }
  starts.emplace_back(n, omega / static_cast<double>(n));
  Xoshiro256pp rng = make_stream(cfg.seed, 0);
  for (std::uint64_t r = 0; r < cfg.restarts; ++r) {
    // Flat Dirichlet point: normalized unit exponentials, scaled to Ω.
    std::vector<double> point(n);
    double total = 0.0;
    for (double& coord : point) {
      coord = exponential(rng, 1.0);
      total += coord;
    }
    for (double& coord : point) coord *= omega / total;
    starts.push_back(std::move(point));
  }

  const double smoothness = estimate_smoothness(fleet);
  WafSolution best;
  bool have_best = false;
  for (std::size_t k = 0; k < starts.size(); ++k) {
    WafSolution candidate;
    run_descent(fleet, starts[k], cfg, smoothness, candidate);
    candidate.origin = static_cast<int>(k);
    if (!have_best || candidate.waf > best.waf) {
      best = std::move(candidate);
      have_best = true;
    }
  }
  return best;
}

}  // namespace mmon
