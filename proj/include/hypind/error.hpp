#pragma once

#include <stdexcept>
#include <string>

namespace hypind {

enum class Errc {
  out_of_range,
  bad_size,
  repeated_vertex,
  duplicate,
  overflow,
  parse,
  unknown_fixture,
  infeasible,
  infeasible_matching,
  invalid_argument,
  budget_exceeded,
  regime_violation,
};

inline const char* to_string(Errc code) {
  switch (code) {
    case Errc::out_of_range: return "OutOfRange";
    case Errc::bad_size: return "BadSize";
    case Errc::repeated_vertex: return "RepeatedVertex";
    case Errc::duplicate: return "Duplicate";
    case Errc::overflow: return "Overflow";
    case Errc::parse: return "Parse";
    case Errc::unknown_fixture: return "UnknownFixture";
    case Errc::infeasible: return "Infeasible";
    case Errc::infeasible_matching: return "InfeasibleMatching";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::regime_violation: return "RegimeViolation";
  }
  return "Unknown";
}

/// Error raised on contract violations of the public API (bad input data).
/// Algorithmic failures that callers are expected to handle (a nibble step
/// exhausting its retries, an exact search hitting its budget) are reported
/// through status fields instead.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace hypind
