#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ttc/adapters/solver_factory.hpp"
#include "ttc/core/candidate.hpp"
#include "ttc/core/solver.hpp"
#include "ttc/core/verify.hpp"

namespace ttc {

enum class MethodKind {
  zero_shot,
  best_of_n,
  self_consistency,
  mixture_of_agents,
  mcts,
  rto,
  prover_verifier,
  plan_search,
  leap,
};

std::string_view to_string(MethodKind kind);
/// Throws ConfigError for unknown names.
MethodKind method_kind_from_string(std::string_view name);

struct MethodResult {
  Candidate candidate;
  nlohmann::json trace = nlohmann::json::object();
  std::vector<std::string> warnings;
  std::vector<std::string> flags;  // e.g. "round_trip_failed", "unaccepted"
};

struct ExecOptions {
  int parallel = 1;
  VerifyOptions verify;
};

/// A worked example for principle extraction.
struct Example {
  std::string input;
  std::string output;
};

struct RoundTripOptions {
  std::string forward_template = "{input}";   // {input} = task prompt
  std::string backward_template = "{input}";  // {input} = forward output
  int attempts = 1;
  const Solver* judge = nullptr;  // equivalence by normalized text when null
};

// Sample i of any multi-sample method uses seed derive_seed(seed, "sample", i), so a
// one-sample method and zero_shot draw the same completion.

MethodResult zero_shot(const Solver& solver, const Task& task, std::uint64_t seed);

/// Rejection sampling against the task's verifier. Among verified samples the
/// smallest canonical answer is returned; without any, the modal answer.
MethodResult best_of_n(const Solver& solver, const Task& task, int n, std::uint64_t seed,
                       const ExecOptions& options = {});

MethodResult self_consistency(const Solver& solver, const Task& task, int n, std::uint64_t seed,
                              const ExecOptions& options = {});

/// One sample per agent, weighted vote. Empty weights mean uniform.
MethodResult mixture_of_agents(const std::vector<const Solver*>& agents, const std::vector<double>& weights,
                               const Task& task, std::uint64_t seed, const ExecOptions& options = {});

/// Two-level search: prefixes ("prefix" role) then completions conditioned on each.
MethodResult mcts_resample(const Solver& solver, const Task& task, int rollouts, std::uint64_t seed,
                           const ExecOptions& options = {});

MethodResult round_trip(const Solver& solver, const Task& task, const RoundTripOptions& rto,
                        std::uint64_t seed);

MethodResult prover_verifier(const Solver& prover, const Solver& verifier_model, const Task& task, int rounds,
                             std::uint64_t seed);

MethodResult plan_search(const Solver& solver, const Task& task, int n_plans, std::uint64_t seed,
                         const ExecOptions& options = {});

MethodResult leap(const Solver& solver, const std::vector<Example>& examples, const Task& task,
                  std::uint64_t seed);

/// Principle lines parsed from the extraction output (bullets stripped, blanks dropped).
std::vector<std::string> parse_principles(const std::string& text);
/// True for "1", "accept", "accepted", "yes", "true", "correct" (first word, any case).
bool parse_decision(const std::string& text);

struct MethodConfig {
  std::string id;  // label used as the matrix column; defaults to the kind name
  MethodKind kind = MethodKind::zero_shot;
  int n = 1;                         // samples / rollouts / plans / attempts
  int rounds = 1;                    // prover-verifier
  std::vector<double> weights;       // mixture_of_agents
  std::vector<std::string> agents;   // mixture_of_agents solver ids
  std::string verifier_solver;       // prover_verifier
  std::string judge_solver;          // rto, optional
  std::string forward_template = "{input}";
  std::string backward_template = "{input}";
  std::vector<Example> examples;     // leap
};

/// Throws ConfigError on n < 1, rounds < 1, bad weights or mismatched agent lists.
void validate_method_config(const MethodConfig& config);
MethodConfig method_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const MethodConfig& config);

/// Dispatches to the method. `solver` is the primary solver; auxiliary solvers
/// (agents, verifier model, judge) are looked up in `registry`.
MethodResult run_method(const MethodConfig& config, const Solver& solver, const SolverRegistry& registry,
                        const Task& task, std::uint64_t seed, const ExecOptions& options = {});

}  // namespace ttc
