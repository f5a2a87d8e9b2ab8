#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace capcover {

enum class CheckLevel { fast, full };

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CheckReport {
  std::vector<CheckResult> results;

  bool all_passed() const;
  std::vector<std::string> failed_names() const;
};

// Hooks for the cross-checks. The radius-to-fraction conversion is
// replaceable so fault-injection tests can confirm the checks catch a broken
// conversion.
struct CheckContext {
  std::function<double(double)> p_from_a;
  std::uint64_t seed = 0x5eed2026;
  unsigned threads = 1;

  CheckContext();
};

CheckReport run_check(CheckLevel level, const CheckContext& context = CheckContext{});

void print_check_report(std::ostream& out, const CheckReport& report);

}  // namespace capcover
