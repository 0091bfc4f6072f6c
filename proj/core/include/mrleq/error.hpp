#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace mrleq {

// Compact rendering of a number for error messages.
inline std::string describe(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Base of every error raised by the library. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A distribution or model parameter outside its admissible domain.
class ParameterDomainError : public Error {
 public:
  using Error::Error;
};

// A tail integral or moment that does not converge (effectively infinite).
class InfiniteMomentError : public Error {
 public:
  using Error::Error;
};

// A numeric table too coarse to certify the required shape (e.g. cdf monotonicity).
class ResolutionError : public Error {
 public:
  using Error::Error;
};

// A caller-supplied function violates its contract (e.g. a non-monotone map).
class ContractViolationError : public Error {
 public:
  using Error::Error;
};

// Evaluation points or grids outside the support of a distribution.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The fixed-point equation has no root in the searched range.
class NoFixedPointError : public Error {
 public:
  using Error::Error;
};

// Results that contradict each other (e.g. several fixed points under a DGMRL certificate).
class InternalInconsistencyError : public Error {
 public:
  using Error::Error;
};

// Realized demand does not exceed the wholesale price, so nothing is traded.
class NoTransactionError : public Error {
 public:
  using Error::Error;
};

// Objective is flat across the whole probe grid.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// Malformed declarative distribution spec. `pointer` is a JSON pointer to the offending node.
class SpecError : public Error {
 public:
  SpecError(std::string pointer, const std::string& message)
      : Error((pointer.empty() ? std::string("/") : pointer) + ": " + message),
        pointer_(std::move(pointer)) {}

  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

}  // namespace mrleq
