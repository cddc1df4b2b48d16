#pragma once

#include <stdexcept>
#include <string>

namespace pda {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Empty or ragged grids, out-of-range indices, malformed text input.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// A grid that fails one of the array conditions where a valid PDA is required.
class VerificationError : public Error {
 public:
  using Error::Error;
};

// Arguments outside a construction's or bound's domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NotTransposableError : public Error {
 public:
  NotTransposableError(std::size_t row_a, std::size_t row_b, const std::string& what)
      : Error(what), row_a_(row_a), row_b_(row_b) {}

  std::size_t row_a() const { return row_a_; }
  std::size_t row_b() const { return row_b_; }

 private:
  std::size_t row_a_;
  std::size_t row_b_;
};

// A user could not rebuild its demanded file from cache and signals.
class DecodeError : public Error {
 public:
  using Error::Error;
};

}  // namespace pda
