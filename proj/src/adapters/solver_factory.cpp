#include "ttc/adapters/solver_factory.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "ttc/adapters/chat_client.hpp"
#include "ttc/adapters/scripted_solver.hpp"
#include "ttc/core/errors.hpp"

namespace ttc {

std::string_view to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::scripted: return "scripted";
    case SolverKind::http_model: return "http-model";
    case SolverKind::composite: return "composite";
  }
  return "scripted";
}

SolverKind solver_kind_from_string(std::string_view name) {
  if (name == "scripted") return SolverKind::scripted;
  if (name == "http-model" || name == "http_model") return SolverKind::http_model;
  if (name == "composite") return SolverKind::composite;
  throw ConfigError("unknown solver kind '" + std::string(name) + "'");
}

CompositeSolver::CompositeSolver(std::string id, std::shared_ptr<const Solver> fallback,
                                 std::map<std::string, std::shared_ptr<const Solver>> by_role)
    : id_(std::move(id)), fallback_(std::move(fallback)), by_role_(std::move(by_role)) {}

Completion CompositeSolver::complete(const Query& query, std::uint64_t seed) const {
  if (auto it = by_role_.find(query.role); it != by_role_.end()) return it->second->complete(query, seed);
  if (fallback_) return fallback_->complete(query, seed);
  Completion c;
  c.error = "composite solver " + id_ + " has no member for role '" + query.role + "'";
  return c;
}

namespace {

const std::string* param(const SolverBinding& b, const std::string& key) {
  auto it = b.params.find(key);
  return it == b.params.end() ? nullptr : &it->second;
}

template <class T>
T number_param(const SolverBinding& b, const std::string& key, T fallback) {
  const auto* v = param(b, key);
  if (!v) return fallback;
  try {
    std::size_t used = 0;
    T out;
    if constexpr (std::is_floating_point_v<T>) out = static_cast<T>(std::stod(*v, &used));
    else out = static_cast<T>(std::stoll(*v, &used));
    if (used != v->size()) throw std::invalid_argument("trailing characters");
    return out;
  } catch (const std::exception&) {
    throw ConfigError("solver " + b.id + ": parameter " + key + " is not a number: '" + *v + "'");
  }
}

std::shared_ptr<const Solver> make_scripted(const SolverBinding& b, const std::filesystem::path& base_dir) {
  nlohmann::json j;
  if (const auto* inline_json = param(b, "script_json")) {
    j = nlohmann::json::parse(*inline_json, nullptr, false);
    if (j.is_discarded()) throw ConfigError("solver " + b.id + ": script_json is not valid JSON");
  } else if (const auto* file = param(b, "script")) {
    const auto path = base_dir / *file;
    std::ifstream in(path);
    if (!in) throw ConfigError("solver " + b.id + ": cannot open script " + path.string());
    j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) throw ConfigError("solver " + b.id + ": script " + path.string() + " is not valid JSON");
  } else {
    throw ConfigError("solver " + b.id + ": scripted solvers need 'script' or 'script_json'");
  }
  const auto seed = number_param<std::uint64_t>(b, "seed", j.is_object() ? j.value("seed", std::uint64_t{0}) : 0);
  try {
    return std::make_shared<ScriptedSolver>(b.id, script_from_json(j), seed);
  } catch (const ConfigError& e) {
    throw ConfigError("solver " + b.id + ": " + e.what());
  }
}

std::shared_ptr<const Solver> make_http(const SolverBinding& b, const std::filesystem::path& base_dir) {
  ChatClientConfig c;
  if (const auto* v = param(b, "base_url")) c.base_url = *v;
  if (const auto* v = param(b, "path")) c.path = *v;
  if (const auto* v = param(b, "model")) c.model = *v;
  if (const auto* v = param(b, "api_key_env")) c.api_key_env = *v;
  if (const auto* v = param(b, "cache_dir")) c.cache_dir = base_dir / *v;
  if (param(b, "api_key")) {
    throw ConfigError("solver " + b.id + ": API keys are not accepted in configuration; use api_key_env");
  }
  c.params.temperature = number_param<double>(b, "temperature", c.params.temperature);
  c.params.max_tokens = number_param<int>(b, "max_tokens", c.params.max_tokens);
  c.max_retries = number_param<int>(b, "max_retries", c.max_retries);
  c.max_in_flight = number_param<int>(b, "max_in_flight", c.max_in_flight);
  c.initial_backoff = std::chrono::milliseconds(number_param<long>(b, "backoff_ms", c.initial_backoff.count()));
  c.timeout = std::chrono::milliseconds(number_param<long>(b, "timeout_ms", c.timeout.count()));
  return std::make_shared<ChatSolver>(b.id, std::make_shared<ChatClient>(std::move(c)));
}

}  // namespace

SolverRegistry make_solvers(const std::vector<SolverBinding>& bindings, const std::filesystem::path& base_dir) {
  SolverRegistry out;
  for (const auto& b : bindings) {
    if (b.id.empty()) throw ConfigError("solver id must be non-empty");
    if (out.count(b.id)) throw ConfigError("duplicate solver id '" + b.id + "'");
    if (b.kind == SolverKind::scripted) out[b.id] = make_scripted(b, base_dir);
    else if (b.kind == SolverKind::http_model) out[b.id] = make_http(b, base_dir);
    else out[b.id] = nullptr;  // resolved below
  }
  auto resolve = [&](const SolverBinding& b, const std::string& ref) {
    auto it = out.find(ref);
    if (it == out.end() || !it->second) {
      throw ConfigError("composite solver " + b.id + " references unknown or composite solver '" + ref + "'");
    }
    return it->second;
  };
  for (const auto& b : bindings) {
    if (b.kind != SolverKind::composite) continue;
    std::shared_ptr<const Solver> fallback;
    std::map<std::string, std::shared_ptr<const Solver>> by_role;
    for (const auto& [key, value] : b.params) {
      if (key == "default") fallback = resolve(b, value);
      else if (key.rfind("role.", 0) == 0) by_role[key.substr(5)] = resolve(b, value);
      else throw ConfigError("composite solver " + b.id + ": unknown parameter " + key);
    }
    if (!fallback && by_role.empty()) throw ConfigError("composite solver " + b.id + " has no members");
    out[b.id] = std::make_shared<CompositeSolver>(b.id, std::move(fallback), std::move(by_role));
  }
  return out;
}

Candidate make_candidate(const Completion& completion, const Task& task, const std::string& solver_id,
                         const std::string& method_id, std::uint64_t seed) {
  if (completion.error) {
    auto c = Candidate::failed(solver_id, method_id, seed, *completion.error);
    c.elapsed_ms = completion.elapsed_ms;
    return c;
  }
  Candidate c;
  c.solver_id = solver_id;
  c.method_id = method_id;
  c.seed = seed;
  c.elapsed_ms = completion.elapsed_ms;
  c.rationale = completion.text;
  std::string error;
  c.answer = try_normalize_answer(completion.text, task.answer_kind, &error);
  if (!c.answer) c.error = "malformed output: " + error;
  return c;
}

Candidate sample(const Solver& solver, const Task& task, std::uint64_t seed, const std::string& method_id) {
  const Query q{&task, "answer", task.prompt};
  return make_candidate(solver.complete(q, seed), task, solver.id(), method_id, seed);
}

}  // namespace ttc
