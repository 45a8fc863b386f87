#include "ttc/core/json_io.hpp"

#include "ttc/core/errors.hpp"

namespace ttc {

json to_json(const AnswerValue& value) {
  json j{{"kind", to_string(value.kind())}};
  switch (value.kind()) {
    case AnswerKind::choice:
    case AnswerKind::text: j["value"] = value.as_string(); break;
    case AnswerKind::integer: j["value"] = value.as_integer(); break;
    case AnswerKind::grid: j["value"] = value.as_grid().rows(); break;
  }
  return j;
}

AnswerValue answer_from_json(const json& j) {
  const auto kind = answer_kind_from_string(j.at("kind").get<std::string>());
  const auto& v = j.at("value");
  switch (kind) {
    case AnswerKind::choice: return normalize_answer(v.get<std::string>(), kind);
    case AnswerKind::text: return AnswerValue::text(v.get<std::string>());
    case AnswerKind::integer: return AnswerValue::integer(v.get<std::int64_t>());
    case AnswerKind::grid:
      return AnswerValue::grid(arc::Grid::from_rows(v.get<std::vector<std::vector<int>>>()));
  }
  throw ConfigError("unknown answer kind");
}

json to_json(const Verdict& verdict) {
  json checks = json::array();
  for (const auto& c : verdict.checks()) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  json j{{"status", to_string(verdict.status())}, {"checks", std::move(checks)}};
  if (verdict.status() == VerdictStatus::error) j["cause"] = verdict.error_cause();
  return j;
}

Verdict verdict_from_json(const json& j) {
  const auto status = verdict_status_from_string(j.at("status").get<std::string>());
  if (status == VerdictStatus::error) {
    // Error verdicts store "<cause>: <detail>" in their single check.
    const auto cause = j.at("cause").get<std::string>();
    const auto full = j.at("checks").at(0).at("detail").get<std::string>();
    std::string detail;
    if (full.size() > cause.size() + 2 && full.compare(0, cause.size(), cause) == 0) {
      detail = full.substr(cause.size() + 2);
    }
    return Verdict::error(cause, detail);
  }
  std::vector<Check> checks;
  for (const auto& c : j.at("checks")) {
    checks.push_back({c.at("name").get<std::string>(), c.at("passed").get<bool>(),
                      c.at("detail").get<std::string>()});
  }
  auto v = Verdict::from_checks(std::move(checks));
  if (v.status() != status) throw ConfigError("verdict status inconsistent with its checks");
  return v;
}

json to_json(const Candidate& c) {
  json j{{"solver_id", c.solver_id},
         {"method_id", c.method_id},
         {"seed", c.seed},
         {"elapsed_ms", c.elapsed_ms}};
  j["answer"] = c.answer ? to_json(*c.answer) : json(nullptr);
  j["rationale"] = c.rationale ? json(*c.rationale) : json(nullptr);
  j["error"] = c.error ? json(*c.error) : json(nullptr);
  return j;
}

Candidate candidate_from_json(const json& j) {
  Candidate c;
  c.solver_id = j.at("solver_id").get<std::string>();
  c.method_id = j.at("method_id").get<std::string>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.elapsed_ms = j.at("elapsed_ms").get<std::uint64_t>();
  if (!j.at("answer").is_null()) c.answer = answer_from_json(j.at("answer"));
  if (!j.at("rationale").is_null()) c.rationale = j.at("rationale").get<std::string>();
  if (!j.at("error").is_null()) c.error = j.at("error").get<std::string>();
  return c;
}

json to_json(const Task& task) {
  json j{{"id", task.id},
         {"category", task.category},
         {"prompt", task.prompt},
         {"answer_kind", to_string(task.answer_kind)}};
  j["reference"] = task.reference ? to_json(*task.reference) : json(nullptr);
  j["verifier"] = task.verifier ? json(task.verifier->name()) : json(nullptr);
  return j;
}

}  // namespace ttc
