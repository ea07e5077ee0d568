#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tow/environment.hpp"

namespace tow {

// Property-suite drivers shared by the `verify-*` subcommands and the
// acceptance runner. Each check reports the worst deviation it saw so the
// caller can print it next to the tolerance.

struct CheckResult {
  std::string name;
  bool pass = false;
  double worst = 0.0;  // largest deviation (or mismatch count for tables)
  std::string detail;
};

// All row/column sums of the internal fluctuation generators over
// `generations` fresh matrices per kind (M=3, N=5, A=1, D=10), plus the
// external kind's row sums.
std::vector<CheckResult> verify_fluctuation_conservation(int generations,
                                                         double tol,
                                                         std::uint64_t seed);

// Long coupled trajectories from zero initialization, checked after every
// step: Q column sums and height row sums. Cycles through fluctuation kinds
// and ω modes so the invariant is exercised across configurations.
std::vector<CheckResult> verify_bombe_conservation(long long steps, double tol,
                                                   std::uint64_t seed);

// The two closed forms of the estimate difference on random count tuples.
CheckResult verify_tow_principle(int tuples, double rel_tol, std::uint64_t seed);

// expected_payoff against every cell of the published three-player payoff
// tables for (P_C, P_D, P_E) = (0.1, 0.2, 0.9), including the SM/NE
// annotations (6 social-maximum cells, 1 Nash cell).
std::vector<CheckResult> verify_payoff_tables();

struct EpdVerifyReport {
  bool table_valid = false;             // 125 rows, levels, degrees in range
  bool anchors_ok = false;              // pinned payoff levels for anchor rows
  std::vector<std::string> oracle_mismatches;  // table degrees vs semantics
  std::vector<std::string> prose_conflicts;    // published prose vs tables
};

// Cross-checks a table (by default the built-in one) against the independent
// degree-semantics oracle and the pinned anchor rows, and reports the known
// prose/table conflicts. Oracle mismatches are reported, never patched.
EpdVerifyReport verify_epd(const EpdTable& table);

}  // namespace tow
