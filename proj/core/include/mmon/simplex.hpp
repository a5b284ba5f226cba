#pragma once

#include <vector>

namespace mmon {

/// Euclidean projection of v onto the scaled simplex {x ≥ 0, Σx = Ω}
/// by the sort-and-threshold rule: subtract the largest uniform shift
/// that keeps the surviving coordinates positive, clip the rest to zero.
/// Idempotent; feasible points map to themselves.
std::vector<double> project_simplex(const std::vector<double>& v, double omega);

}  // namespace mmon
