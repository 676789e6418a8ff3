#pragma once

// The acceptance suite: one deterministic check per numbered criterion, with
// every randomized part derived from a single seed.

#include <cstdint>
#include <string>
#include <vector>

namespace liouville {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;   ///< deterministic summary of the measured quantities
  double seconds = 0.0; ///< wall time; kept out of the rendered reports
};

struct AcceptanceReport {
  std::uint64_t seed = 0;
  std::vector<CriterionResult> criteria;

  bool pass() const;
};

/// Criteria 1-11.  With `check_determinism` the suite runs a second time and
/// criterion 12 compares the two rendered reports byte for byte.
AcceptanceReport run_acceptance(std::uint64_t seed, bool check_determinism = true);

/// Single criterion 1-11.
CriterionResult run_criterion(int id, std::uint64_t seed);

/// JSON document (schema_version "1") without timings.
std::string acceptance_json(const AcceptanceReport& report);
/// One "PASS|FAIL  <id>. <title>: <detail>" line per criterion, without timings.
std::string acceptance_table(const AcceptanceReport& report);

} // namespace liouville
