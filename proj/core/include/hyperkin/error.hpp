#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hyperkin {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Evaluation left a function's domain: log of a non-positive value,
/// division by a zero-valued jet, sqrt at or below zero, and so on.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Lexing or parsing failed. Carries the byte offset into the source text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// A specification (scenario, motion, ambient space) failed validation.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The evaluated frame is degenerate: rank-deficient deformation gradient,
/// vanishing generalized cross product, or a non-positive-definite metric.
class DegenerateFrameError : public Error {
 public:
  using Error::Error;
};

/// An expression referenced a variable the evaluation environment lacks.
class EvalError : public Error {
 public:
  using Error::Error;
};

}  // namespace hyperkin
