#ifndef TNNCLUST_ERRORS_HPP
#define TNNCLUST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tnn {

/// Raised for malformed user input: files, config values, CLI arguments.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configuration that violates one of the TnnConfig invariants.
class ConfigError : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace tnn

#endif  // TNNCLUST_ERRORS_HPP
