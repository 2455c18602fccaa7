#pragma once

#include <stdexcept>
#include <string>

namespace ecs {

/// Argument outside the mathematical domain of an operation (NaN, eta > 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The requested state vanishes identically, e.g. the odd ECS at alpha = 0.
class DegenerateStateError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A matrix or state violates a structural invariant (symmetry, trace, PSD, norm).
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Fock truncation would exceed the configured dimension or memory cap.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require_finite(double x, const char* what) {
  if (!(x == x) || x - x != 0.0) {
    throw DomainError(std::string(what) + " must be finite");
  }
}

inline void require_unit_interval(double x, const char* what) {
  require_finite(x, what);
  if (x < 0.0 || x > 1.0) {
    throw DomainError(std::string(what) + " must lie in [0, 1], got " + std::to_string(x));
  }
}

}  // namespace detail
}  // namespace ecs
