#pragma once

#include <stdexcept>

namespace trapnls {

// Invalid parameters or malformed configuration. Messages start with a stable
// diagnostic token ("kappa_nonpositive: ..."). The CLI maps this to exit code 2.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A numerical tolerance could not be met (e.g. the step-halving check of the
// splitting integrator). The CLI maps this to exit code 1.
struct ToleranceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace trapnls
