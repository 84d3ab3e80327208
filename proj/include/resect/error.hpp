#pragma once

#include <stdexcept>
#include <string>

namespace resect {

enum class ErrorCode {
  InvalidArgument,
  DivisionByZero,
  FieldMismatch,
  DimensionMismatch,
  NotSquare,
  SingularPivot,
  ZeroPolynomial,
  NotMultihomogeneous,
  Genericity,
  CenterCoincidence,
  ChartViolation,
  InconsistentData,
  DegenerateArrangement,
  RankDeficient,
  Schema,
  Io,
  Internal,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace resect
