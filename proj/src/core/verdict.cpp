#include "ttc/core/verdict.hpp"

#include <algorithm>

#include "ttc/core/errors.hpp"

namespace ttc {

std::string_view to_string(VerdictStatus status) {
  switch (status) {
    case VerdictStatus::pass: return "pass";
    case VerdictStatus::fail: return "fail";
    case VerdictStatus::error: return "error";
  }
  return "error";
}

VerdictStatus verdict_status_from_string(std::string_view name) {
  if (name == "pass") return VerdictStatus::pass;
  if (name == "fail") return VerdictStatus::fail;
  if (name == "error") return VerdictStatus::error;
  throw ConfigError("unknown verdict status '" + std::string(name) + "'");
}

Verdict Verdict::from_checks(std::vector<Check> checks) {
  Verdict v;
  const bool all = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  v.status_ = (!checks.empty() && all) ? VerdictStatus::pass : VerdictStatus::fail;
  v.checks_ = std::move(checks);
  return v;
}

Verdict Verdict::error(std::string cause, std::string detail) {
  Verdict v;
  v.status_ = VerdictStatus::error;
  v.checks_.push_back({"error", false, detail.empty() ? cause : cause + ": " + detail});
  v.cause_ = std::move(cause);
  return v;
}

}  // namespace ttc
