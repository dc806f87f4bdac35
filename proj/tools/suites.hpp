#pragma once

#include <string>
#include <vector>

namespace deltakit::cli {

/// One measured check of a verification suite. A check passes when
/// measured <= limit.
struct CheckRow {
  int criterion = 0;
  std::string check;
  bool passed = false;
  /// Reported only; never fails a run.
  bool monitored = false;
  double measured = 0.0;
  double limit = 0.0;
};

inline constexpr int kSuiteCount = 9;

std::string suiteTitle(int number);

/// Runs suite 1..9. Results do not depend on `threads`.
std::vector<CheckRow> runSuite(int number, int threads);

}  // namespace deltakit::cli
