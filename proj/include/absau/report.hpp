#pragma once

#include <cstddef>
#include <string>

#include "absau/term.hpp"

namespace absau {

/// Formatting and limits shared by the command-level entry points.
struct CommandOptions {
  bool json = false;
  /// enumerate: length bound for abstraction terms; required (> 0).
  std::size_t bound = 0;
  std::size_t max_steps = 0;
  bool trace = false;
  unsigned threads = 1;
  /// oracle: candidate size bound and variable pool; sizes above 12 need force.
  std::size_t size_bound = 0;
  std::size_t var_count = 2;
  bool force = false;
};

/// Each returns the complete output text, newline terminated. Errors are
/// thrown (InputError, InvariantError).
std::string report_normalize(const Theory& theory, const Term& t, const CommandOptions& opts);
std::string report_generalize(const Theory& theory, const Term& s, const Term& t,
                              const CommandOptions& opts);
std::string report_enumerate(const Theory& theory, const Term& s, const Term& t,
                             const CommandOptions& opts);
std::string report_linear(const Theory& theory, const Term& s, const Term& t,
                          const CommandOptions& opts);
std::string report_oracle(const Theory& theory, const Term& s, const Term& t,
                          const CommandOptions& opts);

struct CheckReport {
  bool generalizes = false;
  std::string text;
};
CheckReport report_check(const Theory& theory, const Term& r, const Term& s, const Term& t,
                         const CommandOptions& opts);

inline constexpr std::size_t kOracleSizeLimit = 12;

}  // namespace absau
