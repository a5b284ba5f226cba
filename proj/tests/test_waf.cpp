#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "mmon/errors.hpp"
#include "mmon/fleet.hpp"
#include "mmon/machine_params.hpp"
#include "mmon/metrics.hpp"
#include "mmon/rng.hpp"
#include "mmon/simplex.hpp"
#include "mmon/waf_allocator.hpp"

#include "support/opt_oracles.hpp"
#include "support/random_draws.hpp"

namespace {

using namespace mmon;

FleetSpec three_machine_fleet(double budget) {
  FleetSpec fleet;
  fleet.machines = {make_bg_machine(2.0, 0.5, 0.5),
                    make_bg_machine(1.0, 2.0, 1.5),
                    make_bg_machine(1.0, 1.5, 4.0)};
  fleet.w = {0.6, 0.1, 0.3};
  fleet.w_a = 0.6;
  fleet.w_r = 0.4;
  fleet.budget = budget;
  return fleet;
}

// Machines whose arrival pressure exceeds the internal load, so extra
// sampling always helps and budget-exhausting optima are guaranteed.
// Rates span two decades: fixed-step descent paces by the worst global
// curvature across the fleet, so wildly mismatched machines converge too
// slowly to certify against a grid search.
MachineParams random_demand_heavy_machine(Xoshiro256pp& rng) {
  const double alpha = std::pow(10.0, -1.0 + 2.0 * uniform01(rng));
  const double beta = std::pow(10.0, -1.0 + 2.0 * uniform01(rng));
  MachineParams m = make_bg_machine(alpha, beta, 0.0);
  m.lambda = m.alpha * (1.1 + 3.0 * uniform01(rng));
  return m;
}

FleetSpec random_demand_heavy_pair(Xoshiro256pp& rng) {
  FleetSpec fleet;
  fleet.machines = {random_demand_heavy_machine(rng),
                    random_demand_heavy_machine(rng)};
  const double w0 = 0.1 + 0.8 * uniform01(rng);
  fleet.w = {w0, 1.0 - w0};
  fleet.budget = 0.2 + 5.0 * uniform01(rng);
  return fleet;
}

std::vector<double> random_simplex_point(Xoshiro256pp& rng, std::size_t n,
                                         double omega) {
  std::vector<double> point(n);
  double total = 0.0;
  for (double& coord : point) {
    coord = exponential(rng, 1.0);
    total += coord;
  }
  for (double& coord : point) coord *= omega / total;
  return point;
}

double norm(const std::vector<double>& v) {
  double sq = 0.0;
  for (double x : v) sq += x * x;
  return std::sqrt(sq);
}

}  // namespace

TEST_CASE("simplex projection: frozen examples and basic properties") {
  CHECK(project_simplex({3.0, 1.0}, 2.0) == std::vector<double>{2.0, 0.0});
  CHECK(project_simplex({2.0, 2.0}, 2.0) == std::vector<double>{1.0, 1.0});
  CHECK(project_simplex({0.5, 1.5}, 2.0) == std::vector<double>{0.5, 1.5});
  CHECK(project_simplex({-5.0, -7.0}, 1.0) == std::vector<double>{1.0, 0.0});

  Xoshiro256pp rng = make_stream(20240814, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(uniform01(rng) * 6.0);
    const double omega = 0.1 + 10.0 * uniform01(rng);
    std::vector<double> v(n);
    for (double& x : v) x = -10.0 + 20.0 * uniform01(rng);
    const std::vector<double> p = project_simplex(v, omega);

    double total = 0.0;
    for (double x : p) {
      CHECK(x >= 0.0);
      total += x;
    }
    CHECK(total == doctest::Approx(omega).epsilon(1e-12));

    const std::vector<double> twice = project_simplex(p, omega);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(twice[i] == doctest::Approx(p[i]).epsilon(1e-12));
    }
  }

  CHECK_THROWS_AS(static_cast<void>(project_simplex({}, 1.0)),
                  ValidationError);
  CHECK_THROWS_AS(static_cast<void>(project_simplex({1.0}, 0.0)),
                  ValidationError);
  CHECK_THROWS_AS(static_cast<void>(project_simplex({std::nan("")}, 1.0)),
                  ValidationError);
}

TEST_CASE("simplex projection: matches support enumeration for small n") {
  Xoshiro256pp rng = make_stream(20240814, 2);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(uniform01(rng) * 4.0);
    const double omega = 0.1 + 5.0 * uniform01(rng);
    std::vector<double> v(n);
    for (double& x : v) x = -6.0 + 12.0 * uniform01(rng);

    const std::vector<double> fast = project_simplex(v, omega);
    const std::vector<double> exact = test::project_by_enumeration(v, omega);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::fabs(fast[i] - exact[i]) < 1e-10);
    }
  }
}

TEST_CASE("waf value: frozen points and the lambda=0 branch") {
  FleetSpec solo;
  solo.machines = {make_bg_machine(2.0, 0.5, 0.5)};
  solo.w = {1.0};
  solo.budget = 1.0;
  CHECK(waf_value(solo, Allocation{{0.0}}) ==
        doctest::Approx(0.8).epsilon(1e-14));

  const FleetSpec fleet = three_machine_fleet(3.0);
  CHECK(waf_value(fleet, Allocation{{1.0, 1.0, 1.0}}) ==
        doctest::Approx(333173.0 / 459840).epsilon(1e-14));

  // Machines that never see arrivals score by the continuous λ→0 limit,
  // not by the fresh-start limit value α/(α+β).
  FleetSpec quiet;
  quiet.machines = {make_bg_machine(2.0, 0.5, 0.0)};
  quiet.w = {1.0};
  quiet.budget = 1.0;
  const double kappa = quiet.machines[0].kappa();
  CHECK(waf_value(quiet, Allocation{{0.0}}) ==
        doctest::Approx(1.0 - 2.0 / (kappa * kappa)).epsilon(1e-14));
  CHECK(waf_value(quiet, Allocation{{1.0}}) ==
        doctest::Approx(1.0 - 2.0 / (kappa * (1.0 + kappa))).epsilon(1e-14));
}

TEST_CASE("staleness gradient: matches finite differences of the objective") {
  Xoshiro256pp rng = make_stream(20240814, 3);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(uniform01(rng) * 3.0);
    FleetSpec fleet;
    double w_total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      fleet.machines.push_back(test::random_bg_machine(rng));
      fleet.w.push_back(0.1 + uniform01(rng));
      w_total += fleet.w.back();
    }
    for (double& w : fleet.w) w /= w_total;

    Allocation alloc;
    for (std::size_t i = 0; i < n; ++i) {
      alloc.mu.push_back(std::pow(10.0, -2.0 + 3.0 * uniform01(rng)));
    }
    fleet.budget = alloc.total() + 1.0;

    const std::vector<double> grad = staleness_gradient_vec(fleet, alloc);
    std::vector<double> fd(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double h = 1e-5 * std::max(1.0, alloc.mu[i]);
      Allocation hi = alloc, lo = alloc;
      hi.mu[i] += h;
      lo.mu[i] -= h;
      // Staleness is the complement of freshness, so the sign flips.
      fd[i] = -(waf_value(fleet, hi) - waf_value(fleet, lo)) / (2.0 * h);
    }
    std::vector<double> diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = fd[i] - grad[i];
    const double scale = std::max({norm(grad), norm(fd), 1e-300});
    CHECK(norm(diff) / scale < 1e-5);
  }
}

TEST_CASE("curvature bound dominates the sampled second derivative") {
  Xoshiro256pp rng = make_stream(20240814, 4);
  for (int trial = 0; trial < 30; ++trial) {
    const MachineParams m = test::random_bg_machine(rng);
    const double bound = curvature_bound(m);
    CHECK(bound > 0.0);
    for (int j = 0; j < 60; ++j) {
      const double mu = std::pow(10.0, -3.0 + 5.0 * j / 59.0);
      const double h = 1e-5 * std::max(1.0, mu) * 0.5;
      const double second =
          (staleness_derivative(m, mu + h) - staleness_derivative(m, mu - h)) /
          (2.0 * h);
      CHECK(std::fabs(second) <= bound);
    }
  }

  // λ=0: the second derivative peaks at μ=0 with value 4αβ/κ⁴.
  const MachineParams quiet = make_bg_machine(2.0, 0.5, 0.0);
  const double kappa = quiet.kappa();
  CHECK(curvature_bound(quiet) ==
        doctest::Approx(1.25 * 4.0 * quiet.alpha * quiet.beta /
                        (kappa * kappa * kappa * kappa))
            .epsilon(1e-14));
}

TEST_CASE("smoothness estimate: linear in the weights, certifies Lipschitz") {
  FleetSpec raw;  // estimate_smoothness accepts unnormalized weights
  raw.machines = {make_bg_machine(1.0, 0.5, 2.0), make_bg_machine(2.0, 1.0, 3.0)};
  raw.w = {1.0, 2.0};
  const double base = estimate_smoothness(raw);
  raw.w = {2.0, 4.0};
  CHECK(estimate_smoothness(raw) == doctest::Approx(2.0 * base).epsilon(1e-14));
  CHECK(base == doctest::Approx(std::max(curvature_bound(raw.machines[0]),
                                         2.0 * curvature_bound(raw.machines[1])))
                    .epsilon(1e-14));

  Xoshiro256pp rng = make_stream(20240814, 5);
  for (int trial = 0; trial < 40; ++trial) {
    const FleetSpec fleet = random_demand_heavy_pair(rng);
    const double smoothness = estimate_smoothness(fleet);
    for (int pair = 0; pair < 10; ++pair) {
      const Allocation x{random_simplex_point(rng, 2, fleet.budget)};
      const Allocation y{random_simplex_point(rng, 2, fleet.budget)};
      const std::vector<double> gx = staleness_gradient_vec(fleet, x);
      const std::vector<double> gy = staleness_gradient_vec(fleet, y);
      std::vector<double> dg(2), dx(2);
      for (std::size_t i = 0; i < 2; ++i) {
        dg[i] = gx[i] - gy[i];
        dx[i] = x.mu[i] - y.mu[i];
      }
      CHECK(norm(dg) <= smoothness * norm(dx) * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("pgd: degenerate and guarded inputs") {
  FleetSpec solo;
  solo.machines = {make_bg_machine(1.0, 0.5, 2.0)};
  solo.w = {1.0};
  solo.budget = 1.5;

  SUBCASE("one machine always receives the full budget") {
    const WafSolution solution = pgd(solo, Allocation{{1.5}}, PgdConfig{});
    CHECK(solution.alloc.mu[0] == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(solution.iterations <= 2);
  }

  SUBCASE("starts off the budget simplex are rejected") {
    CHECK_THROWS_AS(static_cast<void>(pgd(solo, Allocation{{1.0}}, PgdConfig{})),
                    ValidationError);
  }

  SUBCASE("steps breaking the tau*L < 1 contract are rejected") {
    PgdConfig cfg;
    cfg.step = 1.01 / estimate_smoothness(solo);
    CHECK_THROWS_AS(static_cast<void>(pgd(solo, Allocation{{1.5}}, cfg)),
                    ValidationError);
    cfg.step = 0.5 / estimate_smoothness(solo);
    CHECK_NOTHROW(static_cast<void>(pgd(solo, Allocation{{1.5}}, cfg)));
  }

  SUBCASE("the iteration cap is a stop, not an error") {
    FleetSpec pair;
    pair.machines = {make_bg_machine(1.0, 0.5, 2.0),
                     make_bg_machine(2.0, 1.0, 5.0)};
    pair.w = {0.5, 0.5};
    pair.budget = 2.0;
    PgdConfig cfg;
    cfg.max_iters = 3;
    const WafSolution solution = pgd(pair, Allocation{{2.0, 0.0}}, cfg);
    CHECK(solution.iterations == 3);
  }
}

TEST_CASE("pgd: a symmetric fleet settles on the even split") {
  FleetSpec twins;
  twins.machines = {make_bg_machine(1.0, 0.5, 2.0),
                    make_bg_machine(1.0, 0.5, 2.0)};
  twins.w = {0.5, 0.5};
  twins.budget = 3.0;

  const WafSolution from_center =
      pgd(twins, Allocation{{1.5, 1.5}}, PgdConfig{});
  CHECK(from_center.iterations <= 3);  // already stationary
  CHECK(from_center.alloc.mu[0] == doctest::Approx(1.5).epsilon(1e-9));

  const WafSolution from_vertex =
      pgd(twins, Allocation{{3.0, 0.0}}, PgdConfig{});
  CHECK(from_vertex.alloc.mu[0] == doctest::Approx(1.5).epsilon(1e-5));
  CHECK(from_vertex.waf == doctest::Approx(from_center.waf).epsilon(1e-9));

  const WafSolution best = multi_start_waf(twins, PgdConfig{});
  CHECK(best.waf == doctest::Approx(from_center.waf).epsilon(1e-9));
  CHECK(best.origin >= 0);
  CHECK(best.origin < static_cast<int>(twins.size() + 1 + PgdConfig{}.restarts));
}

TEST_CASE("multi-start ties resolve to the earliest start") {
  // With one machine every start collapses to the full budget, so all
  // candidates are bit-identical and the first one must win.
  FleetSpec solo;
  solo.machines = {make_bg_machine(1.0, 0.5, 2.0)};
  solo.w = {1.0};
  solo.budget = 2.0;
  const WafSolution best = multi_start_waf(solo, PgdConfig{});
  CHECK(best.origin == 0);
  CHECK(waf_origin_label(best.origin, solo.size()) == "vertex-0");
  CHECK(best.alloc.mu[0] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("waf origin labels") {
  CHECK(waf_origin_label(-1, 3) == "unspecified");
  CHECK(waf_origin_label(0, 3) == "vertex-0");
  CHECK(waf_origin_label(2, 3) == "vertex-2");
  CHECK(waf_origin_label(3, 3) == "center");
  CHECK(waf_origin_label(4, 3) == "random-0");
  CHECK(waf_origin_label(11, 3) == "random-7");
}

TEST_CASE("multi-start requires a machine that benefits from sampling") {
  FleetSpec hopeless;
  hopeless.machines = {make_bg_machine(2.0, 0.5, 0.5),
                       make_bg_machine(3.0, 0.5, 0.5)};
  hopeless.w = {0.5, 0.5};
  hopeless.budget = 1.0;
  for (const MachineParams& m : hopeless.machines) {
    CHECK(monotonicity_condition(m) < 0.0);
  }
  CHECK_THROWS_AS(static_cast<void>(multi_start_waf(hopeless, PgdConfig{})),
                  ValidationError);

  FleetSpec mixed = hopeless;
  mixed.machines[1] = make_bg_machine(1.0, 0.5, 2.0);  // condition > 0
  CHECK_NOTHROW(static_cast<void>(multi_start_waf(mixed, PgdConfig{})));
}

TEST_CASE("multi-start pgd matches an exhaustive two-machine search") {
  Xoshiro256pp rng = make_stream(20240814, 6);
  for (int trial = 0; trial < 20; ++trial) {
    const FleetSpec fleet = random_demand_heavy_pair(rng);
    const WafSolution solution = multi_start_waf(fleet, PgdConfig{});
    const double gridded = test::grid_search_waf(fleet, 2001);
    CHECK(solution.waf == doctest::Approx(gridded).epsilon(1e-6));
    CHECK(solution.waf >= gridded - 1e-6);

    // Convergence certificate: the projected-gradient residual is small.
    CHECK(solution.iterations < PgdConfig{}.max_iters);
    CHECK(solution.stationarity <= 1e-8 * fleet.budget);

    CHECK(std::fabs(solution.alloc.total() - fleet.budget) <=
          1e-9 * fleet.budget);
  }
}
