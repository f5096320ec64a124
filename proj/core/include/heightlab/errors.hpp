#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace heightlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class UnknownVariable : public Error {
 public:
  using Error::Error;
};

/// Raised when an input violates an operation's precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

class DegreeCapExceeded : public Error {
 public:
  using Error::Error;
};

class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

class RootTrackingAmbiguity : public Error {
 public:
  using Error::Error;
};

class LengthConditionFailed : public Error {
 public:
  using Error::Error;
};

class NotSmooth : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ScaleCapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace heightlab
