// Built-in verification suite: reproduces the library's reference examples
// and the acceptance checks end to end, one pass/fail line per check.
#pragma once

#include <functional>
#include <string>
#include <vector>

namespace apfire {

struct CheckResult {
  bool pass = false;
  std::string detail;
};

struct Check {
  std::string id;
  std::string summary;
  std::function<CheckResult()> run;
};

const std::vector<Check> &verification_checks();

/// Run checks whose id contains `only` (empty string runs all). Reports each
/// result through the callback and returns the number of failures. When
/// list_only is set, checks are enumerated without running.
int run_verification(const std::string &only, bool list_only,
                     const std::function<void(const Check &, const CheckResult &)> &report);

}  // namespace apfire
