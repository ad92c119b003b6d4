#pragma once

#include <stdexcept>
#include <string>

namespace omni {

// Thrown when caller-supplied data is malformed (bad file, invalid
// distribution, out-of-order frame, non-finite measurement, ...).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a configuration value or parameter shape is unusable.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace omni
