#pragma once

#include <array>
#include <string>

namespace mmon {

// Machine states: 0 = free, 1 = busy with an internal job, 2 = busy with an
// external job. The estimator tracks the same alphabet. The joint chain
// Y(t) = (X, Xhat) lives on seven reachable pairs.
struct SystemState {
  int machine;
  int estimator;

  friend bool operator==(const SystemState&, const SystemState&) = default;
};

inline constexpr int kNumStates = 7;

// Canonical state order used for every matrix/vector index and for
// serialization: [(0,0),(1,0),(1,1),(0,1),(2,2),(0,2),(1,2)].
inline constexpr std::array<SystemState, kNumStates> kStateOrder = {{
    {0, 0}, {1, 0}, {1, 1}, {0, 1}, {2, 2}, {0, 2}, {1, 2},
}};

inline constexpr int kIdx00 = 0;
inline constexpr int kIdx10 = 1;
inline constexpr int kIdx11 = 2;
inline constexpr int kIdx01 = 3;
inline constexpr int kIdx22 = 4;
inline constexpr int kIdx02 = 5;
inline constexpr int kIdx12 = 6;

/// Index of (machine, estimator) in the canonical order, or -1 if the pair
/// is not a reachable system state.
constexpr int state_index(int machine, int estimator) {
  for (int i = 0; i < kNumStates; ++i) {
    if (kStateOrder[i].machine == machine &&
        kStateOrder[i].estimator == estimator) {
      return i;
    }
  }
  return -1;
}

constexpr bool in_state_space(int machine, int estimator) {
  return state_index(machine, estimator) >= 0;
}

inline std::string to_string(const SystemState& s) {
  return "(" + std::to_string(s.machine) + "," + std::to_string(s.estimator) +
         ")";
}

}  // namespace mmon
