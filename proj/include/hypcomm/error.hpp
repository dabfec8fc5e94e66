#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hypcomm {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its precondition (zero input, bad rank, wrong signature...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Symmetric matrix with zero determinant.
class DegenerateFormError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class RankMismatchError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class SignatureError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// Linear parts do not generate a finite group, or translations do not span a full lattice.
class NotCrystallographicError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A bounded search ran out of candidates.  Not a disproof of existence.
class SearchExhaustedError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace hypcomm
