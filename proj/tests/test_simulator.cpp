#include "doctest.h"

#include <array>
#include <cmath>

#include "mmon/errors.hpp"
#include "mmon/generator.hpp"
#include "mmon/machine_params.hpp"
#include "mmon/metrics.hpp"
#include "mmon/similarity_map.hpp"
#include "mmon/simulator.hpp"
#include "mmon/state_space.hpp"

namespace {

using namespace mmon;

const MachineParams kReference{2.0, 0.5, 0.5, 0.5};

bool same_stats(const ReplicationStats& a, const ReplicationStats& b) {
  return a.n_a == b.n_a && a.n_fa == b.n_fa && a.n_r == b.n_r &&
         a.n_fr == b.n_fr && a.fresh_time == b.fresh_time &&
         a.elapsed == b.elapsed;
}

}  // namespace

TEST_CASE("sim config: warmup defaults and validation") {
  SimConfig cfg;
  cfg.horizon = 500.0;
  CHECK(cfg.resolved_warmup() == doctest::Approx(5.0));
  cfg.warmup = 20.0;
  CHECK(cfg.resolved_warmup() == 20.0);
  CHECK_NOTHROW(cfg.validate());

  SimConfig bad = cfg;
  bad.warmup = 500.0;  // must stay below the horizon
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = cfg;
  bad.warmup = -1.0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = cfg;
  bad.horizon = 0.0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
  bad = cfg;
  bad.replications = 0;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("threaded and sequential runs produce identical results") {
  SimConfig cfg;
  cfg.horizon = 2000.0;
  cfg.replications = 8;
  cfg.seed = 7;
  const SimilarityMap map = SimilarityMap::busy_equiv();

  const SimResult threaded = simulate(kReference, 1.0, map, cfg);
  const TransitionObserver no_op = [](int, int, double) {};
  const SimResult sequential =
      simulate_observed(kReference, 1.0, map, cfg, no_op);

  REQUIRE(threaded.replication_stats.size() == 8);
  REQUIRE(sequential.replication_stats.size() == 8);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(same_stats(threaded.replication_stats[i],
                     sequential.replication_stats[i]));
  }
  CHECK(threaded.n_a == sequential.n_a);
  CHECK(threaded.n_fa == sequential.n_fa);
  CHECK(threaded.n_r == sequential.n_r);
  CHECK(threaded.n_fr == sequential.n_fr);
  CHECK(threaded.fresh_time == sequential.fresh_time);
  CHECK(threaded.mean.freshness == sequential.mean.freshness);
  CHECK(threaded.half_width.far == sequential.half_width.far);

  // Different seeds genuinely change the sample path.
  SimConfig other = cfg;
  other.seed = 8;
  const SimResult reseeded = simulate(kReference, 1.0, map, other);
  CHECK(reseeded.fresh_time != threaded.fresh_time);
}

TEST_CASE("feedback-free runs coincide with feedback runs on shared seeds") {
  // The estimate after a false acceptance differs ((1,1) with feedback,
  // (1,2) without) but stays in the busy class, which is all that rates,
  // decisions, and the busy-equivalent similarity map can see.
  SimConfig cfg;
  cfg.horizon = 3000.0;
  cfg.replications = 6;
  cfg.seed = 99;
  const SimilarityMap map = SimilarityMap::busy_equiv();
  const MachineParams params{1.5, 0.7, 0.3, 2.0};  // gamma != beta on purpose

  cfg.feedback = true;
  const SimResult with = simulate(params, 0.8, map, cfg);
  cfg.feedback = false;
  const SimResult without = simulate(params, 0.8, map, cfg);

  CHECK(with.n_a == without.n_a);
  CHECK(with.n_fa == without.n_fa);
  CHECK(with.n_r == without.n_r);
  CHECK(with.n_fr == without.n_fr);
  CHECK(with.fresh_time == without.fresh_time);

  // The exact similarity map distinguishes the two estimator trajectories.
  cfg.feedback = true;
  const SimResult exact_with =
      simulate(params, 0.8, SimilarityMap::exact(), cfg);
  cfg.feedback = false;
  const SimResult exact_without =
      simulate(params, 0.8, SimilarityMap::exact(), cfg);
  CHECK(exact_with.fresh_time > exact_without.fresh_time);
}

TEST_CASE("observed transition rates reproduce the generator") {
  SimConfig cfg;
  cfg.horizon = 20000.0;
  cfg.replications = 4;
  cfg.seed = 31;
  cfg.warmup = 0.0;
  const double mu = 1.0;

  std::array<double, kNumStates> time_in{};
  std::array<std::array<double, kNumStates>, kNumStates> jumps{};
  const TransitionObserver tally = [&](int from, int to, double hold) {
    time_in[static_cast<std::size_t>(from)] += hold;
    jumps[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)] += 1.0;
  };
  simulate_observed(kReference, mu, SimilarityMap::busy_equiv(), cfg, tally);

  const Matrix7 q = build_generator(kReference, mu).q;
  for (int i = 0; i < kNumStates; ++i) {
    REQUIRE(time_in[static_cast<std::size_t>(i)] > 100.0);
    for (int j = 0; j < kNumStates; ++j) {
      if (i == j) continue;
      const double total = time_in[static_cast<std::size_t>(i)];
      const double rate =
          jumps[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] /
          total;
      if (q(i, j) == 0.0) {
        CHECK(rate == 0.0);  // structural zeros must never fire
      } else {
        // Poisson-count estimate: std dev of the rate is sqrt(q / T).
        CHECK(std::fabs(rate - q(i, j)) < 4.0 * std::sqrt(q(i, j) / total));
      }
    }
  }
}

TEST_CASE("simulation tracks the analytic metrics at the reference point") {
  SimConfig cfg;
  cfg.horizon = 30000.0;
  cfg.replications = 8;
  cfg.seed = 2024;
  const double mu = 1.0;

  for (bool feedback : {true, false}) {
    CAPTURE(feedback);
    cfg.feedback = feedback;
    const SimResult result =
        simulate(kReference, mu, SimilarityMap::busy_equiv(), cfg);
    CHECK(std::fabs(result.mean.freshness - 13.0 / 16) <=
          3.0 * result.half_width.freshness);
    CHECK(std::fabs(result.mean.far - 0.5) <= 3.0 * result.half_width.far);
    CHECK(std::fabs(result.mean.frr - 1.0 / 7) <= 3.0 * result.half_width.frr);

    const MetricTriple pooled = empirical_metrics(result);
    CHECK(pooled.freshness == doctest::Approx(13.0 / 16).epsilon(0.02));
    CHECK(pooled.far == doctest::Approx(0.5).epsilon(0.05));
    CHECK(pooled.frr == doctest::Approx(1.0 / 7).epsilon(0.05));
  }
}

TEST_CASE("no arrivals: decision counters stay empty, freshness still works") {
  const MachineParams quiet{2.0, 0.5, 0.5, 0.0};
  SimConfig cfg;
  cfg.horizon = 20000.0;
  cfg.replications = 8;
  cfg.seed = 5;
  const double mu = 0.7;

  const SimResult result =
      simulate(quiet, mu, SimilarityMap::busy_equiv(), cfg);
  CHECK(result.n_a == 0);
  CHECK(result.n_r == 0);
  CHECK(std::isnan(result.mean.far));
  CHECK(std::isnan(result.half_width.frr));

  const double kappa = quiet.kappa();
  const double analytic =
      1.0 - 2.0 * quiet.alpha * quiet.beta / (kappa * (mu + kappa));
  CHECK(std::fabs(result.mean.freshness - analytic) <=
        3.0 * result.half_width.freshness);

  CHECK_THROWS_AS(static_cast<void>(empirical_metrics(result)),
                  UndefinedRatioError);
}

TEST_CASE("no sampling: one acceptance per path, then rejections forever") {
  // Without samples the estimate never returns to "free" after the first
  // assignment, so each replication accepts exactly the first arrival.
  SimConfig cfg;
  cfg.horizon = 200.0;
  cfg.replications = 2000;
  cfg.seed = 12;
  cfg.warmup = 0.0;  // the single acceptance happens early

  const SimResult result =
      simulate(kReference, 0.0, SimilarityMap::busy_equiv(), cfg);
  CHECK(result.n_a == cfg.replications);

  const MetricTriple limits = limits_mu_zero(kReference);
  const double pooled_far = static_cast<double>(result.n_fa) /
                            static_cast<double>(result.n_a);
  const double pooled_frr = static_cast<double>(result.n_fr) /
                            static_cast<double>(result.n_r);
  const double pooled_fresh = result.fresh_time / result.elapsed;
  CHECK(std::fabs(pooled_far - limits.far) < 0.04);     // 2/3
  CHECK(std::fabs(pooled_frr - limits.frr) < 0.01);     // 1/5
  CHECK(std::fabs(pooled_fresh - limits.freshness) < 0.01);  // 4/5
}

TEST_CASE("simulate rejects invalid inputs") {
  SimConfig cfg;
  const SimilarityMap map = SimilarityMap::busy_equiv();
  CHECK_THROWS_AS(static_cast<void>(simulate(kReference, -1.0, map, cfg)),
                  ValidationError);
  const MachineParams bad{0.0, 1.0, 1.0, 1.0};
  CHECK_THROWS_AS(static_cast<void>(simulate(bad, 1.0, map, cfg)),
                  ValidationError);
  SimConfig bad_cfg;
  bad_cfg.replications = 0;
  CHECK_THROWS_AS(static_cast<void>(simulate(kReference, 1.0, map, bad_cfg)),
                  ValidationError);
}
