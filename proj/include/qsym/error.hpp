#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qsym {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arithmetic between elements (or polynomials) of different fields.
class FieldMismatch : public Error {
 public:
  using Error::Error;
};

/// Operation on polynomials from different rings.
class RingMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed polynomial text or pencil file. `offset()` is a byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at byte " + std::to_string(offset)), message_(what), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  std::size_t offset_;
};

/// Invalid argument or violated precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A Gröbner computation exceeded its work budget. Never a wrong answer.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Reduction of rational data modulo a prime that divides a denominator.
class BadPrime : public Error {
 public:
  using Error::Error;
};

/// A rank-2 quadratic form cannot be brought to hyperbolic shape over the
/// current field because the needed square root is missing.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// Every retry of a seeded generator produced a non-generic member.
class GenericityError : public Error {
 public:
  using Error::Error;
};

/// An identity that must hold for every admissible input failed; indicates a
/// bug rather than bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace qsym
