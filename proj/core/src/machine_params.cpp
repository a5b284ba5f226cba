#include "mmon/machine_params.hpp"

#include <cmath>
#include <string>

#include "mmon/errors.hpp"

namespace mmon {

namespace {

void check_rate(const char* name, double value, bool allow_zero) {
  if (!std::isfinite(value)) {
    throw ValidationError(std::string(name) + ": rate must be finite");
  }
  if (value < 0.0 || (!allow_zero && value == 0.0)) {
    throw ValidationError(std::string(name) + ": rate must be " +
                          (allow_zero ? ">= 0" : "> 0"));
  }
}

}  // namespace

void MachineParams::validate() const {
  check_rate("alpha", alpha, false);
  check_rate("beta", beta, false);
  check_rate("gamma", gamma, false);
  check_rate("lambda", lambda, true);
}

}  // namespace mmon
