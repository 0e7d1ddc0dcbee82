#pragma once

#include <stdexcept>
#include <string>

namespace stablelat {

/// Invalid parameters or malformed input. CLI exit code 2.
class config_error : public std::invalid_argument {
  public:
    explicit config_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Structurally valid input outside an operation's supported class
/// (e.g. a non-smooth spec passed to a derivative operator).
class unsupported_input : public config_error {
  public:
    explicit unsupported_input(const std::string& what) : config_error(what) {}
};

/// Quadrature non-convergence, overflow, or other numerical failure
/// detected at runtime. CLI exit code 3.
class numeric_error : public std::runtime_error {
  public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stablelat
