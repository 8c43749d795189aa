#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace blab {

// Each error class maps onto one CLI exit status (see tools/main.cpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition or configuration problem. Exit status 2.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A node/sample budget was exhausted. Exit status 3.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A word is longer than the radius on which free-group answers are valid for
// the presentation. Exit status 4.
class RegimeViolation : public Error {
 public:
  using Error::Error;
};

// Raised only in strict mode when a bound's hypotheses fail. Exit status 5.
class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

// Malformed code string; `offset` is the index of the offending symbol.
class DecodeError : public Error {
 public:
  DecodeError(std::size_t offset, const std::string& reason)
      : Error("decode error at symbol " + std::to_string(offset) + ": " +
              reason),
        offset_(offset),
        reason_(reason) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t offset_;
  std::string reason_;
};

}  // namespace blab
