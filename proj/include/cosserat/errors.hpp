#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cosserat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define COSSERAT_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                         \
   public:                                                            \
    using Error::Error;                                               \
    const char* kind() const noexcept override { return #Name; }      \
  };

// Logarithm requested too close to the angle-pi branch point.
COSSERAT_DEFINE_ERROR(AngleNearPi)
// Composition whose product rotation sits on the branch cut.
COSSERAT_DEFINE_ERROR(BranchCut)
// Canonical coordinates outside the chart ball ||y|| < pi - margin.
COSSERAT_DEFINE_ERROR(ChartBoundary)
COSSERAT_DEFINE_ERROR(DomainError)
COSSERAT_DEFINE_ERROR(StateInvalid)
COSSERAT_DEFINE_ERROR(TemperatureRecoveryFailed)

#undef COSSERAT_DEFINE_ERROR

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const noexcept { return line_; }
  const char* kind() const noexcept override { return "ParseError"; }

 private:
  int line_;
};

/// Aggregates every violation found while validating a configuration.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}
  const std::vector<std::string>& violations() const noexcept { return violations_; }
  const char* kind() const noexcept override { return "ValidationError"; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) {
      if (!out.empty()) out += "; ";
      out += s;
    }
    return out;
  }
  std::vector<std::string> violations_;
};

}  // namespace cosserat
