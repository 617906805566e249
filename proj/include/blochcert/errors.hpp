#pragma once

#include <stdexcept>
#include <string>

namespace blochcert {

/// Malformed or out-of-contract input (bad dimensions, bad JSON, bad parameters).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A mathematical precondition fails, e.g. a singular matrix where one is not allowed.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The map has a (numerically) vanishing Jacobian at the origin; no certificate exists.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sampled class constants contradict the (K, K') the caller asserted.
class ClassViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical invariant that holds in exact arithmetic was not met.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace blochcert
