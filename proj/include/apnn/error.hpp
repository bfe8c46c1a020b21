#pragma once

#include <stdexcept>
#include <string>

namespace apnn {

/// Invalid configuration, shape mismatch or unsupported option.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A NaN or infinity showed up where a finite value is required.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// API misuse, e.g. asking a tape for the adjoint of a foreign variable.
class MisuseError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Broken internal invariant.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// File could not be read, written or parsed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace apnn
