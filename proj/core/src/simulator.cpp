#include "mmon/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include <boost/math/distributions/students_t.hpp>

#include "mmon/errors.hpp"
#include "mmon/rng.hpp"
#include "mmon/state_space.hpp"

namespace mmon {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_mu(double mu) {
  if (!(std::isfinite(mu) && mu >= 0.0)) {
    throw ValidationError("sampling rate must be finite and non-negative");
  }
}

ReplicationStats run_one(const MachineParams& params, double mu,
                         const SimilarityMap& map, double horizon,
                         double warmup, bool feedback, std::uint64_t seed,
                         std::uint64_t rep, const TransitionObserver* observer) {
  Xoshiro256pp rng = make_stream(seed, rep);
  int x = 0;     // machine: 0 free, 1 busy-internal, 2 busy-external
  int xhat = 0;  // allocator's estimate
  ReplicationStats stats;
  stats.elapsed = horizon - warmup;
  double t = 0.0;
  while (true) {
    const double machine_rate =
        (x == 0) ? params.alpha : (x == 1) ? params.beta : params.gamma;
    const double dt_machine = exponential(rng, machine_rate);
    const double dt_arrival =
        (params.lambda > 0.0) ? exponential(rng, params.lambda) : kInf;
    const double dt_sample = (mu > 0.0) ? exponential(rng, mu) : kInf;

    // Exact ties have probability zero; resolve by fixed priority
    // machine transition > external arrival > sample.
    double dt;
    int event;  // 0 machine, 1 arrival, 2 sample
    if (dt_machine <= dt_arrival && dt_machine <= dt_sample) {
      dt = dt_machine;
      event = 0;
    } else if (dt_arrival <= dt_sample) {
      dt = dt_arrival;
      event = 1;
    } else {
      dt = dt_sample;
      event = 2;
    }

    const double t_next = t + dt;
    const double seg_lo = std::max(t, warmup);
    const double seg_hi = std::min(t_next, horizon);
    if (seg_hi > seg_lo && map.fresh(x, xhat)) {
      stats.fresh_time += seg_hi - seg_lo;
    }
    if (t_next >= horizon) break;

    const bool counted = t_next >= warmup;
    const int from = state_index(x, xhat);
    switch (event) {
      case 0:  // internal arrival when free, completion when busy
        x = (x == 0) ? 1 : 0;
        break;
      case 1:
        if (xhat == 0) {  // accept
          if (counted) {
            ++stats.n_a;
            if (x != 0) ++stats.n_fa;
          }
          if (feedback) {
            if (x == 0) {
              x = 2;  // job assigned and started
              xhat = 2;
            } else {
              xhat = x;  // job lost; estimator corrected
            }
          } else {
            if (x == 0) x = 2;
            xhat = 2;  // no feedback: assume the assignment took
          }
        } else {  // reject: decision only, no state update
          if (counted) {
            ++stats.n_r;
            if (x == 0) ++stats.n_fr;
          }
        }
        break;
      case 2:
        xhat = x;
        break;
    }
    const int to = state_index(x, xhat);
    if (to < 0) {
      throw NumericError("simulated state left the valid state space");
    }
    if (observer) (*observer)(from, to, dt);
    t = t_next;
  }
  return stats;
}

// Per-metric mean and 95% Student-t half-width over the replications
// where the metric is defined.
void summarize(const std::vector<double>& values, double& mean,
               double& half_width) {
  std::vector<double> defined;
  defined.reserve(values.size());
  for (double v : values) {
    if (!std::isnan(v)) defined.push_back(v);
  }
  if (defined.empty()) {
    mean = kNaN;
    half_width = kNaN;
    return;
  }
  double total = 0.0;
  for (double v : defined) total += v;
  mean = total / static_cast<double>(defined.size());
  if (defined.size() == 1) {
    half_width = kInf;
    return;
  }
  double ss = 0.0;
  for (double v : defined) ss += (v - mean) * (v - mean);
  const double n = static_cast<double>(defined.size());
  const double variance = ss / (n - 1.0);
  const boost::math::students_t dist(n - 1.0);
  half_width = boost::math::quantile(dist, 0.975) * std::sqrt(variance / n);
}

SimResult assemble(std::vector<ReplicationStats> stats) {
  SimResult result;
  result.replication_metrics.reserve(stats.size());
  std::vector<double> fresh, far, frr;
  fresh.reserve(stats.size());
  far.reserve(stats.size());
  frr.reserve(stats.size());
  for (const ReplicationStats& st : stats) {
    result.n_a += st.n_a;
    result.n_fa += st.n_fa;
    result.n_r += st.n_r;
    result.n_fr += st.n_fr;
    result.fresh_time += st.fresh_time;
    result.elapsed += st.elapsed;
    MetricTriple triple;
    triple.freshness = st.fresh_time / st.elapsed;
    triple.far = (st.n_a > 0)
                     ? static_cast<double>(st.n_fa) / static_cast<double>(st.n_a)
                     : kNaN;
    triple.frr = (st.n_r > 0)
                     ? static_cast<double>(st.n_fr) / static_cast<double>(st.n_r)
                     : kNaN;
    fresh.push_back(triple.freshness);
    far.push_back(triple.far);
    frr.push_back(triple.frr);
    result.replication_metrics.push_back(triple);
  }
  summarize(fresh, result.mean.freshness, result.half_width.freshness);
  summarize(far, result.mean.far, result.half_width.far);
  summarize(frr, result.mean.frr, result.half_width.frr);
  result.replication_stats = std::move(stats);
  return result;
}

SimResult run_all(const MachineParams& params, double mu,
                  const SimilarityMap& map, const SimConfig& cfg,
                  const TransitionObserver* observer) {
  params.validate();
  check_mu(mu);
  cfg.validate();
  const double warmup = cfg.resolved_warmup();
  std::vector<ReplicationStats> stats(cfg.replications);
  const auto run_range = [&](std::uint64_t first, std::uint64_t stride) {
    for (std::uint64_t rep = first; rep < cfg.replications; rep += stride) {
      stats[rep] = run_one(params, mu, map, cfg.horizon, warmup, cfg.feedback,
                           cfg.seed, rep, observer);
    }
  };
  const std::uint64_t n_threads =
      observer ? 1
               : std::min<std::uint64_t>(
                     cfg.replications,
                     std::max(1u, std::thread::hardware_concurrency()));
  if (n_threads <= 1) {
    run_range(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::uint64_t k = 0; k < n_threads; ++k) {
      pool.emplace_back(run_range, k, n_threads);
    }
    for (std::thread& th : pool) th.join();
  }
  return assemble(std::move(stats));
}

}  // namespace

double SimConfig::resolved_warmup() const {
  return warmup.value_or(0.01 * horizon);
}

void SimConfig::validate() const {
  if (!(std::isfinite(horizon) && horizon > 0.0)) {
    throw ValidationError("horizon must be finite and positive");
  }
  const double w = resolved_warmup();
  if (!(std::isfinite(w) && w >= 0.0 && w < horizon)) {
    throw ValidationError("warmup must satisfy 0 ≤ warmup < horizon");
  }
  if (replications < 1) {
    throw ValidationError("at least one replication is required");
  }
}

SimResult simulate(const MachineParams& params, double mu,
                   const SimilarityMap& map, const SimConfig& cfg) {
  return run_all(params, mu, map, cfg, nullptr);
}

SimResult simulate_observed(const MachineParams& params, double mu,
                            const SimilarityMap& map, const SimConfig& cfg,
                            const TransitionObserver& observer) {
  return run_all(params, mu, map, cfg, &observer);
}

MetricTriple empirical_metrics(const SimResult& result) {
  if (result.n_a == 0) {
    throw UndefinedRatioError("FAR undefined: no acceptance events observed");
  }
  if (result.n_r == 0) {
    throw UndefinedRatioError("FRR undefined: no rejection events observed");
  }
  MetricTriple triple;
  triple.freshness = result.fresh_time / result.elapsed;
  triple.far =
      static_cast<double>(result.n_fa) / static_cast<double>(result.n_a);
  triple.frr =
      static_cast<double>(result.n_fr) / static_cast<double>(result.n_r);
  return triple;
}

}  // namespace mmon
