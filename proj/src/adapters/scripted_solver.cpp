#include "ttc/adapters/scripted_solver.hpp"

#include <cmath>

#include "ttc/core/errors.hpp"
#include "ttc/core/seed.hpp"

namespace ttc {

std::string rot13(std::string_view text) {
  std::string out(text);
  for (auto& ch : out) {
    if (ch >= 'a' && ch <= 'z') ch = static_cast<char>('a' + (ch - 'a' + 13) % 26);
    else if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>('A' + (ch - 'A' + 13) % 26);
  }
  return out;
}

namespace {

void validate_table(const AnswerTable& table, const std::string& where) {
  if (table.empty()) throw ConfigError(where + ": empty answer table");
  double sum = 0.0;
  for (const auto& e : table) {
    if (!(e.probability >= 0.0)) throw ConfigError(where + ": negative probability for '" + e.text + "'");
    sum += e.probability;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ConfigError(where + ": probabilities sum to " + std::to_string(sum) + ", expected 1");
  }
}

AnswerTable table_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": answer table must be an object");
  AnswerTable t;
  for (const auto& [text, p] : j.items()) {
    if (!p.is_number()) throw ConfigError(where + ": probability for '" + text + "' is not a number");
    t.push_back({text, p.get<double>()});
  }
  return t;
}

}  // namespace

void validate_script(const Script& script) {
  for (const auto& [task, roles] : script.tasks)
    for (const auto& [role, table] : roles) validate_table(table, "task " + task + " role " + role);
  for (std::size_t i = 0; i < script.rules.size(); ++i) {
    validate_table(script.rules[i].table, "rule " + std::to_string(i));
  }
}

Script script_from_json(const nlohmann::json& j) {
  Script s;
  if (!j.is_object()) throw ConfigError("script must be a JSON object");
  s.latency_ms = j.value("latency_ms", std::uint64_t{0});
  if (j.contains("tasks")) {
    for (const auto& [task, entry] : j.at("tasks").items()) {
      if (!entry.is_object() || entry.empty()) throw ConfigError("task " + task + ": expected an object");
      if (entry.begin()->is_number()) {
        s.tasks[task]["answer"] = table_from_json(entry, "task " + task);
      } else {
        for (const auto& [role, table] : entry.items()) {
          s.tasks[task][role] = table_from_json(table, "task " + task + " role " + role);
        }
      }
    }
  }
  if (j.contains("rules")) {
    for (const auto& r : j.at("rules")) {
      ScriptRule rule;
      if (r.contains("role")) rule.role = r.at("role").get<std::string>();
      rule.contains = r.value("contains", std::string{});
      rule.table = table_from_json(r.at("answers"), "rule");
      s.rules.push_back(std::move(rule));
    }
  }
  validate_script(s);
  return s;
}

ScriptedSolver::ScriptedSolver(std::string id, Script script, std::uint64_t rng_seed)
    : id_(std::move(id)), script_(std::move(script)), rng_seed_(rng_seed) {
  if (id_.empty()) throw ConfigError("solver id must be non-empty");
  validate_script(script_);
}

const AnswerTable* ScriptedSolver::find_table(const Query& query) const {
  for (const auto& rule : script_.rules) {
    if (rule.role && *rule.role != query.role) continue;
    if (query.prompt.find(rule.contains) != std::string::npos) return &rule.table;
  }
  auto lookup = [&](const std::string& task) -> const AnswerTable* {
    auto it = script_.tasks.find(task);
    if (it == script_.tasks.end()) return nullptr;
    auto r = it->second.find(query.role);
    return r == it->second.end() ? nullptr : &r->second;
  };
  const std::string task_id = query.task ? query.task->id : std::string{};
  if (auto* t = lookup(task_id)) return t;
  return lookup("*");
}

Completion ScriptedSolver::complete(const Query& query, std::uint64_t seed) const {
  Completion c;
  c.elapsed_ms = script_.latency_ms;
  const auto* table = find_table(query);
  if (!table) {
    c.error = "no script entry for task '" + (query.task ? query.task->id : std::string{}) + "' role '" +
              query.role + "'";
    return c;
  }
  const std::string task_id = query.task ? query.task->id : std::string{};
  Rng rng(derive_seed(derive_seed(derive_seed(rng_seed_, id_), task_id), query.role, seed));
  const double u = uniform01(rng);
  double acc = 0.0;
  const WeightedText* pick = nullptr;
  for (const auto& e : *table) {
    if (e.probability > 0.0) pick = &e;  // rounding guard: last positive entry
  }
  for (const auto& e : *table) {
    acc += e.probability;
    if (u < acc) {
      pick = &e;
      break;
    }
  }
  if (pick->text == "@echo") c.text = query.prompt;
  else if (pick->text == "@rot13") c.text = rot13(query.prompt);
  else c.text = pick->text;
  return c;
}

}  // namespace ttc
