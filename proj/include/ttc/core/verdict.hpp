#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ttc {

enum class VerdictStatus { pass, fail, error };

std::string_view to_string(VerdictStatus status);
VerdictStatus verdict_status_from_string(std::string_view name);

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;

  friend bool operator==(const Check&, const Check&) = default;
};

/// Outcome of verifying one candidate. Status is derived, never set directly:
/// pass iff checks are non-empty and all passed; error verdicts carry a cause.
class Verdict {
 public:
  Verdict() = default;
  static Verdict from_checks(std::vector<Check> checks);
  /// `cause` is one of: unverifiable, timeout, crash, malformed output, solver error.
  static Verdict error(std::string cause, std::string detail = {});

  VerdictStatus status() const { return status_; }
  bool passed() const { return status_ == VerdictStatus::pass; }
  const std::vector<Check>& checks() const { return checks_; }
  /// Empty unless status() == error.
  const std::string& error_cause() const { return cause_; }

  friend bool operator==(const Verdict&, const Verdict&) = default;

 private:
  VerdictStatus status_ = VerdictStatus::fail;
  std::vector<Check> checks_;
  std::string cause_;
};

}  // namespace ttc
