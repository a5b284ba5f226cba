#include "mmon/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "mmon/errors.hpp"

namespace mmon {

std::vector<double> project_simplex(const std::vector<double>& v,
                                    double omega) {
  if (v.empty()) {
    throw ValidationError("cannot project an empty vector");
  }
  if (!(std::isfinite(omega) && omega > 0.0)) {
    throw ValidationError("simplex scale must be finite and positive");
  }
  for (double value : v) {
    if (!std::isfinite(value)) {
      throw ValidationError("projection input must be finite");
    }
  }

  std::vector<double> sorted(v);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  // Uniform shift of the largest prefix that stays positive after it.
  double prefix = 0.0;
  double theta = sorted.front() - omega;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    prefix += sorted[j];
    const double shift = (prefix - omega) / static_cast<double>(j + 1);
    if (sorted[j] - shift > 0.0) theta = shift;
  }

  std::vector<double> projected(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    projected[i] = std::max(v[i] - theta, 0.0);
  }
  return projected;
}

}  // namespace mmon
