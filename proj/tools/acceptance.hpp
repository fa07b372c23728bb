#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace floqsim::cli {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 1;
  /// Empty runs every criterion.
  std::set<int> only;
};

/// Runs the acceptance criteria with their thresholds fixed in code.
/// Prints one line per criterion as it completes when `verbose`.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options, bool verbose);

std::string format_result(const CriterionResult& r);

}  // namespace floqsim::cli
