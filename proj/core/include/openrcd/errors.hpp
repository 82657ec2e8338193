#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace openrcd {

/// Raised when an argument violates a documented precondition. The message
/// names the offending parameter and the bound it broke.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configuration value failed validation. key() is the config key at fault.
class ConfigError : public ParameterError {
 public:
  ConfigError(std::string key, const std::string& what)
      : ParameterError(key + ": " + what), key_(std::move(key)) {}

  [[nodiscard]] const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Raised by iterative solvers that fail to converge.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace openrcd
