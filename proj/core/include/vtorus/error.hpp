#pragma once

#include <stdexcept>
#include <string>

namespace vtorus {

/// Failure categories. The numeric values double as CLI exit codes.
enum class ErrorKind : int {
  InvalidArgument = 1,      ///< bad input, violated precondition, malformed file
  NumericalFailure = 2,     ///< a numerical guard tripped (stiffness, tail, factorization)
  AssumptionViolation = 3,  ///< input outside the theory's hypotheses
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorKind::InvalidArgument, what) {}
};

class NumericalFailure : public Error {
 public:
  explicit NumericalFailure(const std::string& what)
      : Error(ErrorKind::NumericalFailure, what) {}
};

class AssumptionViolation : public Error {
 public:
  explicit AssumptionViolation(const std::string& what)
      : Error(ErrorKind::AssumptionViolation, what) {}
};

}  // namespace vtorus
