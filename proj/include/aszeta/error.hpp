#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace aszeta {

/// Base of every error raised by the library. The CLI maps the concrete
/// subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition on an input value failed (p not an odd prime, R = 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class FieldMismatch : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

class EmbeddingError : public Error {
 public:
  using Error::Error;
};

/// A computation would exceed the configured enumeration budget or search cap.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, std::uint64_t required)
      : Error(what), required_(required) {}
  std::uint64_t required() const noexcept { return required_; }

 private:
  std::uint64_t required_;
};

/// c was expected to lie in W. Carries the coordinates of the residual
/// b_{h-1}^p - c a_h, which vanishes exactly on W.
class NotInKernel : public Error {
 public:
  NotInKernel(const std::string& what, std::string residual)
      : Error(what), residual_(std::move(residual)) {}
  const std::string& residual() const noexcept { return residual_; }

 private:
  std::string residual_;
};

/// Left division of additive polynomials left a nonzero remainder.
class DivisibilityError : public Error {
 public:
  using Error::Error;
};

/// An identity that the mathematics guarantees did not hold: a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace aszeta
