#pragma once

#include <stdexcept>
#include <string>

namespace kbsim {

// Raised for malformed or rejected experiment configuration. The CLI maps
// this to exit code 1.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a numeric routine leaves its validity envelope (failed
// Cholesky pivot, variance below -1e-10, ...). The CLI maps this to exit
// code 2.
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kbsim
