#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "mmon/machine_params.hpp"
#include "mmon/metrics.hpp"
#include "mmon/similarity_map.hpp"

namespace mmon {

/// Monte Carlo run configuration.
struct SimConfig {
  double horizon = 1e5;            ///< simulated time per replication
  std::uint64_t replications = 10; ///< independent replications
  std::uint64_t seed = 0;          ///< base seed; replication i uses stream i
  bool feedback = true;            ///< estimator updated at assignment time
  std::optional<double> warmup{};  ///< discarded prefix; default 1% of horizon

  /// Warmup with the default applied.
  double resolved_warmup() const;

  /// Requires horizon > warmup ≥ 0 and replications ≥ 1.
  void validate() const;
};

/// Raw statistics from one replication, collected after warmup.
struct ReplicationStats {
  std::uint64_t n_a = 0;   ///< acceptances
  std::uint64_t n_fa = 0;  ///< false acceptances (machine busy)
  std::uint64_t n_r = 0;   ///< rejections
  std::uint64_t n_fr = 0;  ///< false rejections (machine free)
  double fresh_time = 0.0; ///< time with C(X, X̂) = 1
  double elapsed = 0.0;    ///< horizon − warmup
};

/// Aggregated simulation output.  Top-level counters pool all
/// replications; the vectors hold per-replication detail.  Ratio entries
/// of a replication metric triple are NaN when that replication saw no
/// qualifying events; mean/half_width are computed per metric over the
/// replications where it is defined (half-width is the 95% Student-t
/// interval, infinite when only one replication qualifies).
struct SimResult {
  std::uint64_t n_a = 0;
  std::uint64_t n_fa = 0;
  std::uint64_t n_r = 0;
  std::uint64_t n_fr = 0;
  double fresh_time = 0.0;
  double elapsed = 0.0;
  std::vector<ReplicationStats> replication_stats;
  std::vector<MetricTriple> replication_metrics;
  MetricTriple mean;
  MetricTriple half_width;
};

/// Called once per event with the canonical indices of the states before
/// and after it and the holding time spent before the event.  from == to
/// happens on rejected arrivals and redundant samples.
using TransitionObserver = std::function<void(int from, int to, double hold)>;

/// Event-driven Monte Carlo of one machine plus its resource allocator.
/// Starts every replication in (0,0); competing exponential clocks are
/// redrawn after each event, so the trajectory law is exact.  On an
/// external arrival the job is accepted iff X̂=0 (false acceptance when
/// the machine is busy); with feedback the estimator is corrected to the
/// true state at assignment time, without feedback it is set to
/// busy-external unconditionally.  Rejections change no state (false
/// rejection counted when the machine was actually free).  Sampling sets
/// X̂ := X.  μ=0 and λ=0 are both allowed.  Replications may run on
/// several threads; the result is bit-identical either way.
SimResult simulate(const MachineParams& params, double mu,
                   const SimilarityMap& map, const SimConfig& cfg);

/// Same trajectory law, run sequentially (replication order) with every
/// event reported to the observer.  Used to audit empirical transition
/// rates against the generator.
SimResult simulate_observed(const MachineParams& params, double mu,
                            const SimilarityMap& map, const SimConfig& cfg,
                            const TransitionObserver& observer);

/// Pooled ratio estimators (fresh_time/elapsed, n_fa/n_a, n_fr/n_r).
/// Throws UndefinedRatioError naming the metric whose event count is zero.
MetricTriple empirical_metrics(const SimResult& result);

}  // namespace mmon
