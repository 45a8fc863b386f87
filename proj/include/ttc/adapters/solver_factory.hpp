#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ttc/core/candidate.hpp"
#include "ttc/core/solver.hpp"

namespace ttc {

using SolverRegistry = std::map<std::string, std::shared_ptr<const Solver>>;

std::string_view to_string(SolverKind kind);
/// "scripted", "http-model" (or "http_model"), "composite"; ConfigError otherwise.
SolverKind solver_kind_from_string(std::string_view name);

/// Routes each role to a member solver, falling back to a default member.
class CompositeSolver final : public Solver {
 public:
  CompositeSolver(std::string id, std::shared_ptr<const Solver> fallback,
                  std::map<std::string, std::shared_ptr<const Solver>> by_role);
  const std::string& id() const override { return id_; }
  Completion complete(const Query& query, std::uint64_t seed) const override;

 private:
  std::string id_;
  std::shared_ptr<const Solver> fallback_;
  std::map<std::string, std::shared_ptr<const Solver>> by_role_;
};

/// Builds every binding. Parameters by kind:
///   scripted:   script=<json file, relative to base_dir> | script_json=<inline>, seed
///   http-model: base_url, model, api_key_env, path, temperature, max_tokens, cache_dir,
///               max_retries, backoff_ms, timeout_ms, max_in_flight
///   composite:  default=<solver id>, role.<role>=<solver id>
/// Throws ConfigError on duplicate ids, unknown references or bad parameters.
SolverRegistry make_solvers(const std::vector<SolverBinding>& bindings,
                            const std::filesystem::path& base_dir = {});

/// Turns a raw completion into a candidate: the text is normalized to the task's
/// answer kind and kept verbatim as the rationale. Unreadable text gives an error
/// candidate whose message starts with "malformed output".
Candidate make_candidate(const Completion& completion, const Task& task, const std::string& solver_id,
                         const std::string& method_id, std::uint64_t seed);

/// One "answer" draw on the task prompt.
Candidate sample(const Solver& solver, const Task& task, std::uint64_t seed,
                 const std::string& method_id = "sample");

}  // namespace ttc
