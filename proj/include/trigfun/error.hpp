#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace trigfun {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A size argument (point count, grid length, eigenpair count) is out of range.
class InvalidSizeError : public Error {
 public:
  using Error::Error;
};

/// Array arguments have inconsistent lengths.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Operands live on different intervals, or an argument is outside the
/// domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An operation that needs odd grids received an even one.
class ParityError : public Error {
 public:
  using Error::Error;
};

/// A real-valued operation was applied to complex-valued data.
class RealnessError : public Error {
 public:
  using Error::Error;
};

/// Adaptive construction did not converge before the maximum grid size.
class ResolutionError : public Error {
 public:
  ResolutionError(std::string what, std::size_t last_size)
      : Error(std::move(what)), last_size_(last_size) {}
  std::size_t last_size() const noexcept { return last_size_; }

 private:
  std::size_t last_size_;
};

/// Floating point failure: non-finite samples, stagnation of an iteration.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SingularOperatorError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Two interpolation nodes coincide modulo the period.
class DuplicateNodeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Expression or problem-file syntax error. `offset` is a byte offset into
/// the source text.
class ParseError : public Error {
 public:
  ParseError(std::string what, std::size_t offset,
             std::vector<std::string> expected = {})
      : Error(std::move(what)), offset_(offset), expected_(std::move(expected)) {}
  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

}  // namespace trigfun
