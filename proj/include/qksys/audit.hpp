#pragma once

#include <string>
#include <vector>

namespace qksys {

// The verification suite behind `qksys audit` and the acceptance test
// binary. Every check pins its expected values and tolerances in code and
// re-derives them through independent routes where one exists (brute-force
// subset filters, pair-counting formulas, exhaustive enumeration). The
// medium scale runs the full parameter sets; small trims repetition counts
// for quick smoke runs without changing any check's identity.
enum class AuditScale { small, medium };

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double millis = 0.0;
  double budget_millis = 0.0;
};

std::vector<CheckResult> run_audit(AuditScale scale);

bool all_passed(const std::vector<CheckResult>& results);

// One line per check: PASS/FAIL, name, runtime, detail.
std::string format_audit_table(const std::vector<CheckResult>& results);

}  // namespace qksys
