#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wonham {

/// Invalid experiment parameters (bad JSON, non-positive rates, unstable step).
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// File could not be read or written.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a map (time outside [0,H], probability at the boundary, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Grids of two paths do not match.
struct GridMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A step of an SDE integrator produced a non-finite value.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, std::size_t step)
      : std::runtime_error(what + " at step " + std::to_string(step)), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Quadrature left its admissible range or did not converge.
struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The backward path transform hit a nonpositive log argument.
struct SingularWindowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace wonham
