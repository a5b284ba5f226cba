#pragma once

#include <array>

#include "mmon/state_space.hpp"

namespace mmon {

/// 0/1 similarity map C(machine, estimator) over the seven system states.
/// The estimate is "fresh" in a state iff C is 1 there.
struct SimilarityMap {
  std::array<bool, kNumStates> c{};

  /// C(0,0)=C(1,1)=C(2,2)=1: fresh only when the estimate matches exactly.
  static SimilarityMap exact() {
    SimilarityMap m;
    m.c[kIdx00] = m.c[kIdx11] = m.c[kIdx22] = true;
    return m;
  }

  /// Exact map plus C(1,2)=1: the two busy flavors count as close.
  static SimilarityMap busy_equiv() {
    SimilarityMap m = exact();
    m.c[kIdx12] = true;
    return m;
  }

  bool fresh_at(int state_idx) const { return c[state_idx]; }

  /// Lookup by (machine, estimator); pairs outside the state space are
  /// never fresh.
  bool fresh(int machine, int estimator) const {
    const int idx = state_index(machine, estimator);
    return idx >= 0 && c[idx];
  }
};

}  // namespace mmon
