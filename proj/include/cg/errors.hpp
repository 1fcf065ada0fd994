#pragma once

#include <stdexcept>
#include <string>

namespace cg {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input outside the operation's domain (non-finite entries, empty lists).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Documented precondition of an analysis routine is violated.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An iterative numerical routine failed to converge or produced non-finite values.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A game lacks a capability an optimizer needs (e.g. Jacobian products).
class CapabilityError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Object used out of order, e.g. reading gradients before a backward pass.
class StateError : public Error {
 public:
  using Error::Error;
};

class UnsupportedGameError : public Error {
 public:
  using Error::Error;
};

}  // namespace cg
