#pragma once

// Reference implementations the optimizer tests compare against: an
// exponential-time exact simplex projection and exhaustive budget splits
// for two-machine fleets.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mmon/fleet.hpp"
#include "mmon/waf_allocator.hpp"
#include "mmon/war_allocator.hpp"

namespace mmon::test {

/// Euclidean projection onto {x ≥ 0, Σx = Ω} by support enumeration: the
/// projection equals v − θ on its support and 0 elsewhere, with θ
/// balancing the budget over the support and complementary slackness
/// holding off it.  Exponential in n; for n ≤ ~10 only.
inline std::vector<double> project_by_enumeration(const std::vector<double>& v,
                                                  double omega) {
  const std::size_t n = v.size();
  std::vector<double> best;
  double best_dist = std::numeric_limits<double>::infinity();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    double support_sum = 0.0;
    int support_size = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        support_sum += v[i];
        ++support_size;
      }
    }
    const double theta = (support_sum - omega) / support_size;
    std::vector<double> candidate(n, 0.0);
    bool feasible = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        candidate[i] = v[i] - theta;
        feasible = feasible && candidate[i] >= -1e-12;
      } else {
        feasible = feasible && v[i] - theta <= 1e-12;
      }
    }
    if (!feasible) continue;
    double dist = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dist += (candidate[i] - v[i]) * (candidate[i] - v[i]);
    }
    if (dist < best_dist) {
      best_dist = dist;
      best = std::move(candidate);
    }
  }
  if (best.empty()) {
    throw std::logic_error("no consistent projection support found");
  }
  return best;
}

/// Smallest WAR over an exhaustive split of the budget between two
/// machines.  Grid points are clamped to [0, Ω]: rounding must not push a
/// split past the budget, where the complementary rate would go negative.
inline double grid_search_war(const FleetSpec& fleet, int points) {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < points; ++k) {
    const double frac =
        static_cast<double>(k) / static_cast<double>(points - 1);
    const double mu0 = std::min(fleet.budget, fleet.budget * frac);
    best =
        std::min(best, war_value(fleet, Allocation{{mu0, fleet.budget - mu0}}));
  }
  return best;
}

/// Largest WAF over an exhaustive two-machine split: coarse pass plus one
/// equally fine refinement around the winner, so the discretization error
/// is quadratic in (Ω/points)².
inline double grid_search_waf(const FleetSpec& fleet, int points) {
  const auto value_at = [&](double mu0) {
    mu0 = std::min(std::max(mu0, 0.0), fleet.budget);
    return waf_value(fleet, Allocation{{mu0, fleet.budget - mu0}});
  };
  double best_mu = 0.0;
  double best = -std::numeric_limits<double>::infinity();
  const double step = fleet.budget / (points - 1);
  for (int k = 0; k < points; ++k) {
    const double mu0 = static_cast<double>(k) * step;
    const double value = value_at(mu0);
    if (value > best) {
      best = value;
      best_mu = mu0;
    }
  }
  const double lo = std::max(0.0, best_mu - step);
  const double hi = std::min(fleet.budget, best_mu + step);
  for (int k = 0; k < points; ++k) {
    const double mu0 = lo + (hi - lo) * static_cast<double>(k) / (points - 1);
    best = std::max(best, value_at(mu0));
  }
  return best;
}

}  // namespace mmon::test
