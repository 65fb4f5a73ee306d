#pragma once

#include <stdexcept>
#include <string>

namespace cobordize {

enum class ErrorCode {
  invalid_argument,
  zero_vector,
  not_primitive,
  rank_mismatch,
  dependent_generators,
  not_a_circuit,
  not_strongly_convex,
  not_a_fan,
  not_simplicial,
  outside_support,
  support_mismatch,
  not_a_cobordism,
  orbit_fixed,
  not_in_fan,
  not_pi_injective,
  quotient_not_geometric,
  not_minimal,
  not_closed,
  non_elementary,
  not_collapsible,
  replay_mismatch,
  construction_invalid,
  parse_error,
  rank_limit,
  internal,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code),
        detail_(detail) {}

  ErrorCode code() const { return code_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace cobordize
