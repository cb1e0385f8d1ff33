#pragma once

// The numbered acceptance suite (criteria 1-12). Each check runs at its published size
// and tolerance, times itself and counts the runtime limit toward pass/fail.

#include <string>
#include <vector>

namespace pluriharm {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  double seconds = 0.0;
  double limit_seconds = 0.0;
  /// Measured quantities behind the verdict.
  std::string detail;
};

std::vector<int> all_criteria();

/// Runs the listed criteria in ascending order. Criteria 6 and 7 share one computation;
/// asking for either runs it once and reports both that were requested.
std::vector<CriterionResult> run_criteria(const std::vector<int>& ids);

/// "criterion 4: PASS (12.3 s / 120 s) annulus ... ".
std::string format_result(const CriterionResult& result);

}  // namespace pluriharm
