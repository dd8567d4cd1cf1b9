#pragma once

#include <chrono>
#include <cmath>
#include <string>
#include <vector>

namespace cosserat::verify {

enum class Status { Pass, Fail, Info };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Info: return "info";
  }
  return "?";
}

struct Check {
  std::string suite;
  std::string property;
  Status status = Status::Info;
  double value = 0.0;
  double threshold = 0.0;
  std::string relation;  ///< "<=", ">=", "==" or "" for informational rows
};

inline Check at_most(std::string suite, std::string property, double value, double threshold) {
  const bool ok = std::isfinite(value) && value <= threshold;
  return {std::move(suite), std::move(property), ok ? Status::Pass : Status::Fail, value, threshold, "<="};
}
inline Check at_least(std::string suite, std::string property, double value, double threshold) {
  const bool ok = std::isfinite(value) && value >= threshold;
  return {std::move(suite), std::move(property), ok ? Status::Pass : Status::Fail, value, threshold, ">="};
}
inline Check exactly(std::string suite, std::string property, bool holds, double value = 0.0) {
  return {std::move(suite), std::move(property), holds ? Status::Pass : Status::Fail, value, 0.0, "=="};
}
inline Check info(std::string suite, std::string property, double value, double reference = 0.0) {
  return {std::move(suite), std::move(property), Status::Info, value, reference, ""};
}

struct CriterionReport {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;

  bool passed() const {
    for (const auto& c : checks)
      if (c.status == Status::Fail) return false;
    return true;
  }
};

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

/// Observed convergence orders between successive refinement levels (refinement ratio 2).
inline std::vector<double> observed_orders(const std::vector<double>& errors) {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i) out.push_back(std::log2(errors[i] / errors[i + 1]));
  return out;
}

inline double min_order(const std::vector<double>& errors) {
  double m = INFINITY;
  for (double o : observed_orders(errors)) m = std::min(m, o);
  return m;
}

}  // namespace cosserat::verify
