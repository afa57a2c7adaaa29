#pragma once
// Exception hierarchy. Configuration and argument mistakes derive from
// std::invalid_argument so callers (and the CLI) can map them to usage
// failures; numerical breakdowns derive from std::runtime_error.

#include <stdexcept>
#include <string>

namespace subfrac {

// Invalid configuration: out-of-range parameters, malformed grids, bad enums.
class parameter_error : public std::invalid_argument {
 public:
  explicit parameter_error(const std::string& what) : std::invalid_argument(what) {}
};

// Argument outside the mathematical domain of an operation (u <= 0, t <= 0, ...).
class domain_error : public parameter_error {
 public:
  explicit domain_error(const std::string& what) : parameter_error(what) {}
};

// A numerical procedure ran but could not produce a trustworthy value
// (quadrature non-convergence, series breakdown, overflow).
class evaluation_error : public std::runtime_error {
 public:
  explicit evaluation_error(const std::string& what) : std::runtime_error(what) {}
};

// Requested accuracy is unreachable with the given discretization.
class accuracy_error : public evaluation_error {
 public:
  explicit accuracy_error(const std::string& what) : evaluation_error(what) {}
};

// A path-dependent query ran past the simulated horizon; the caller should
// extend the path and retry.
class insufficient_horizon_error : public std::runtime_error {
 public:
  explicit insufficient_horizon_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace subfrac
