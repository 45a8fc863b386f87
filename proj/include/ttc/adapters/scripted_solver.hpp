#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ttc/core/solver.hpp"

namespace ttc {

/// One outcome of a scripted draw. Two texts are special: "@echo" returns the
/// query prompt and "@rot13" returns its ROT13 image.
struct WeightedText {
  std::string text;
  double probability = 0.0;
};
using AnswerTable = std::vector<WeightedText>;

/// Prompt-dependent override, checked before the task tables.
struct ScriptRule {
  std::optional<std::string> role;  // any role when unset
  std::string contains;             // substring of the prompt
  AnswerTable table;
};

struct Script {
  /// task id -> role -> table. Task "*" matches every task.
  std::map<std::string, std::map<std::string, AnswerTable>> tasks;
  std::vector<ScriptRule> rules;
  std::uint64_t latency_ms = 0;  // reported, not slept
};

/// Throws ConfigError unless every table is non-empty, non-negative and sums to 1 ± 1e-9.
void validate_script(const Script& script);

/// {"seed": 7, "latency_ms": 0,
///  "tasks": {"t1": {"A": 0.5, "B": 0.5}, "t2": {"answer": {...}, "prefix": {...}}},
///  "rules": [{"role": "answer", "contains": "principle", "answers": {"3": 1.0}}]}
/// A task entry whose values are numbers is the "answer" table.
Script script_from_json(const nlohmann::json& j);

/// Deterministic table-driven solver. The draw for a query depends only on the
/// solver seed, task id, role and call seed; never on the prompt text or call order.
class ScriptedSolver final : public Solver {
 public:
  ScriptedSolver(std::string id, Script script, std::uint64_t rng_seed = 0);

  const std::string& id() const override { return id_; }
  Completion complete(const Query& query, std::uint64_t seed) const override;

  const Script& script() const { return script_; }

 private:
  const AnswerTable* find_table(const Query& query) const;

  std::string id_;
  Script script_;
  std::uint64_t rng_seed_;
};

/// Adapter for hand-written solvers in tests and examples.
class FunctionSolver final : public Solver {
 public:
  using Fn = std::function<Completion(const Query&, std::uint64_t)>;
  FunctionSolver(std::string id, Fn fn) : id_(std::move(id)), fn_(std::move(fn)) {}
  const std::string& id() const override { return id_; }
  Completion complete(const Query& query, std::uint64_t seed) const override { return fn_(query, seed); }

 private:
  std::string id_;
  Fn fn_;
};

std::string rot13(std::string_view text);

}  // namespace ttc
