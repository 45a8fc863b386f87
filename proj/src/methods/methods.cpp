#include "ttc/methods/methods.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

#include "ttc/core/errors.hpp"
#include "ttc/core/json_io.hpp"
#include "ttc/core/seed.hpp"
#include "ttc/methods/parallel.hpp"
#include "ttc/methods/selection.hpp"

namespace ttc {

using nlohmann::json;

std::string_view to_string(MethodKind kind) {
  switch (kind) {
    case MethodKind::zero_shot: return "zero_shot";
    case MethodKind::best_of_n: return "best_of_n";
    case MethodKind::self_consistency: return "self_consistency";
    case MethodKind::mixture_of_agents: return "mixture_of_agents";
    case MethodKind::mcts: return "mcts";
    case MethodKind::rto: return "rto";
    case MethodKind::prover_verifier: return "prover_verifier";
    case MethodKind::plan_search: return "plan_search";
    case MethodKind::leap: return "leap";
  }
  return "zero_shot";
}

MethodKind method_kind_from_string(std::string_view name) {
  for (auto k : {MethodKind::zero_shot, MethodKind::best_of_n, MethodKind::self_consistency,
                 MethodKind::mixture_of_agents, MethodKind::mcts, MethodKind::rto, MethodKind::prover_verifier,
                 MethodKind::plan_search, MethodKind::leap}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown method '" + std::string(name) + "'");
}

namespace {

Candidate draw(const Solver& solver, const Task& task, const std::string& role, const std::string& prompt,
               std::uint64_t seed, const std::string& method) {
  return make_candidate(solver.complete(Query{&task, role, prompt}, seed), task, solver.id(), method, seed);
}

std::uint64_t slot_seed(std::uint64_t seed, std::size_t i) { return derive_seed(seed, "sample", i); }

bool verifiable(const Task& task) { return task.verifier || task.reference; }

json answer_json(const Candidate& c) { return c.ok() ? json(c.answer->canonical()) : json(nullptr); }

json sample_entry(std::size_t slot, const Candidate& c) {
  json e = {{"slot", slot}, {"seed", c.seed}, {"solver", c.solver_id}, {"answer", answer_json(c)}};
  if (c.error) e["error"] = *c.error;
  return e;
}

std::uint64_t total_elapsed(const std::vector<Candidate>& cs) {
  std::uint64_t t = 0;
  for (const auto& c : cs) t += c.elapsed_ms;
  return t;
}

MethodResult finish(MethodResult r, const std::vector<Candidate>& samples, std::optional<std::size_t> chosen,
                    const std::string& method, const Solver* solver, std::uint64_t seed) {
  if (chosen) {
    r.candidate = samples[*chosen];
    r.trace["selected"] = *chosen;
  } else {
    std::string why = "all " + std::to_string(samples.size()) + " samples failed";
    for (const auto& s : samples)
      if (s.error) {
        why += " (first: " + *s.error + ")";
        break;
      }
    r.candidate = Candidate::failed(solver ? solver->id() : std::string("-"), method, seed, why);
    r.trace["selected"] = nullptr;
  }
  r.candidate.method_id = method;
  r.candidate.elapsed_ms = total_elapsed(samples);
  return r;
}

// Verified selection shared by best_of_n and plan_search.
MethodResult select_verified(MethodResult r, const std::vector<Candidate>& samples, const Task& task,
                             const ExecOptions& options, const std::string& method, const Solver& solver,
                             std::uint64_t seed) {
  std::vector<bool> passed(samples.size(), false);
  json entries = json::array();
  if (verifiable(task)) {
    const auto verdicts = fan_out<Verdict>(samples.size(), options.parallel,
                                           [&](std::size_t i) { return verify(task, samples[i], options.verify); });
    for (std::size_t i = 0; i < samples.size(); ++i) {
      passed[i] = verdicts[i].passed();
      auto e = sample_entry(i, samples[i]);
      e["verdict"] = std::string(to_string(verdicts[i].status()));
      entries.push_back(std::move(e));
    }
  } else {
    r.warnings.push_back("task " + task.id + " has no verifier; selecting the modal answer");
    for (std::size_t i = 0; i < samples.size(); ++i) entries.push_back(sample_entry(i, samples[i]));
  }
  r.trace["samples"] = std::move(entries);
  auto chosen = smallest_flagged_index(samples, passed);
  r.trace["selection"] = chosen ? "verified" : "modal";
  if (!chosen) chosen = modal_index(samples);
  return finish(std::move(r), samples, chosen, method, &solver, seed);
}

std::vector<Candidate> draw_slots(const Solver& solver, const Task& task, int n, std::uint64_t seed,
                                  const ExecOptions& options, const std::string& method) {
  return fan_out<Candidate>(static_cast<std::size_t>(n), options.parallel, [&](std::size_t i) {
    return draw(solver, task, "answer", task.prompt, slot_seed(seed, i), method);
  });
}

void require_positive(int n, const char* what) {
  if (n < 1) throw ConfigError(std::string(what) + " must be >= 1");
}

std::string fill_template(const std::string& tmpl, const std::string& input) {
  std::string out;
  const std::string key = "{input}";
  std::size_t pos = 0;
  for (;;) {
    const auto hit = tmpl.find(key, pos);
    if (hit == std::string::npos) break;
    out += tmpl.substr(pos, hit - pos) + input;
    pos = hit + key.size();
  }
  return out + tmpl.substr(pos);
}

std::optional<std::string> folded(const std::string& text) {
  auto v = try_normalize_answer(text, AnswerKind::text);
  if (!v) return std::nullopt;
  return v->as_string();
}

}  // namespace

MethodResult zero_shot(const Solver& solver, const Task& task, std::uint64_t seed) {
  MethodResult r;
  r.trace = {{"method", "zero_shot"}};
  std::vector<Candidate> samples{draw(solver, task, "answer", task.prompt, slot_seed(seed, 0), "zero_shot")};
  r.trace["samples"] = json::array({sample_entry(0, samples[0])});
  r.candidate = samples[0];
  return r;
}

MethodResult best_of_n(const Solver& solver, const Task& task, int n, std::uint64_t seed,
                       const ExecOptions& options) {
  require_positive(n, "best_of_n n");
  MethodResult r;
  r.trace = {{"method", "best_of_n"}, {"n", n}};
  const auto samples = draw_slots(solver, task, n, seed, options, "best_of_n");
  return select_verified(std::move(r), samples, task, options, "best_of_n", solver, seed);
}

MethodResult self_consistency(const Solver& solver, const Task& task, int n, std::uint64_t seed,
                              const ExecOptions& options) {
  require_positive(n, "self_consistency n");
  MethodResult r;
  r.trace = {{"method", "self_consistency"}, {"n", n}};
  const auto samples = draw_slots(solver, task, n, seed, options, "self_consistency");
  json entries = json::array();
  for (std::size_t i = 0; i < samples.size(); ++i) entries.push_back(sample_entry(i, samples[i]));
  r.trace["samples"] = std::move(entries);
  const auto report = consensus(samples);
  r.trace["consensus"] = report.c;
  std::map<std::string, int> tally;
  for (const auto& s : samples)
    if (s.ok()) ++tally[s.answer->canonical()];
  int top = 0, tied = 0;
  for (const auto& [k, v] : tally) top = std::max(top, v);
  for (const auto& [k, v] : tally) tied += v == top;
  r.trace["tie_broken"] = tied > 1;
  return finish(std::move(r), samples, modal_index(samples), "self_consistency", &solver, seed);
}

MethodResult mixture_of_agents(const std::vector<const Solver*>& agents, const std::vector<double>& weights,
                               const Task& task, std::uint64_t seed, const ExecOptions& options) {
  if (agents.empty()) throw ConfigError("mixture_of_agents needs at least one agent");
  std::vector<double> w = weights;
  if (w.empty()) w.assign(agents.size(), 1.0 / static_cast<double>(agents.size()));
  if (w.size() != agents.size()) {
    throw ConfigError("mixture_of_agents: " + std::to_string(w.size()) + " weights for " +
                      std::to_string(agents.size()) + " agents");
  }
  double sum = 0.0;
  for (double x : w) {
    if (!(x >= 0.0)) throw ConfigError("mixture_of_agents: weights must be non-negative");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ConfigError("mixture_of_agents: weights must sum to 1");

  MethodResult r;
  r.trace = {{"method", "mixture_of_agents"}, {"weights", w}};
  const auto samples = fan_out<Candidate>(agents.size(), options.parallel, [&](std::size_t i) {
    return draw(*agents[i], task, "answer", task.prompt, derive_seed(seed, "agent", i), "mixture_of_agents");
  });
  json entries = json::array();
  for (std::size_t i = 0; i < samples.size(); ++i) entries.push_back(sample_entry(i, samples[i]));
  r.trace["samples"] = std::move(entries);
  return finish(std::move(r), samples, weighted_vote_index(samples, w), "mixture_of_agents", agents.front(), seed);
}

MethodResult mcts_resample(const Solver& solver, const Task& task, int rollouts, std::uint64_t seed,
                           const ExecOptions& options) {
  require_positive(rollouts, "mcts rollouts");
  if (rollouts == 1) {
    auto r = zero_shot(solver, task, seed);
    r.trace["method"] = "mcts";
    r.candidate.method_id = "mcts";
    return r;
  }
  MethodResult r;
  r.trace = {{"method", "mcts"}, {"rollouts", rollouts}};
  const auto k = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(rollouts))));

  // Identical prefixes are one node; keep drawing until k nodes or 4k draws.
  std::vector<std::string> prefixes;
  std::uint64_t prefix_cost = 0;
  for (std::size_t draw_i = 0; draw_i < 4 * k && prefixes.size() < k; ++draw_i) {
    const auto c = solver.complete(Query{&task, "prefix", task.prompt}, derive_seed(seed, "prefix", draw_i));
    prefix_cost += c.elapsed_ms;
    if (c.error) continue;
    if (std::find(prefixes.begin(), prefixes.end(), c.text) == prefixes.end()) prefixes.push_back(c.text);
  }
  if (prefixes.empty()) {
    auto z = zero_shot(solver, task, seed);
    z.trace["method"] = "mcts";
    z.candidate.method_id = "mcts";
    z.warnings.push_back("no prefix could be sampled; fell back to a single sample");
    return z;
  }
  const std::size_t per_node = std::max<std::size_t>(1, static_cast<std::size_t>(rollouts) / prefixes.size());

  std::vector<Candidate> all;
  for (std::size_t node = 0; node < prefixes.size(); ++node) {
    const auto prompt = task.prompt + "\n\nPartial reasoning:\n" + prefixes[node];
    const auto node_seed = seed ^ fnv1a(prefixes[node]);
    auto batch = fan_out<Candidate>(per_node, options.parallel, [&](std::size_t j) {
      return draw(solver, task, "answer", prompt, derive_seed(node_seed, "rollout", j), "mcts");
    });
    all.insert(all.end(), batch.begin(), batch.end());
  }

  std::vector<double> reward(all.size(), 0.0);
  std::vector<bool> passed(all.size(), false);
  if (verifiable(task)) {
    const auto verdicts = fan_out<Verdict>(all.size(), options.parallel,
                                           [&](std::size_t i) { return verify(task, all[i], options.verify); });
    for (std::size_t i = 0; i < all.size(); ++i) {
      passed[i] = verdicts[i].passed();
      reward[i] = passed[i] ? 1.0 : 0.0;
    }
    r.trace["reward"] = "verified";
  } else {
    const auto modal = consensus(all).modal_answer;
    for (std::size_t i = 0; i < all.size(); ++i) reward[i] = (modal && all[i].ok() && *all[i].answer == *modal);
    r.warnings.push_back("task " + task.id + " has no verifier; reward is agreement with the modal answer");
    r.trace["reward"] = "modal_agreement";
  }

  json nodes = json::array();
  std::optional<std::size_t> best;
  double best_value = -1.0;
  for (std::size_t node = 0; node < prefixes.size(); ++node) {
    double sum = 0.0;
    json rewards = json::array();
    for (std::size_t j = 0; j < per_node; ++j) {
      sum += reward[node * per_node + j];
      rewards.push_back(reward[node * per_node + j]);
    }
    const double value = sum / static_cast<double>(per_node);
    nodes.push_back({{"prefix", prefixes[node]}, {"visits", per_node}, {"rewards", rewards}, {"value", value}});
    if (!best || value > best_value || (value == best_value && prefixes[node] < prefixes[*best])) {
      best = node;
      best_value = value;
    }
  }
  r.trace["nodes"] = std::move(nodes);
  r.trace["chosen_prefix"] = prefixes[*best];

  const std::vector<Candidate> node_samples(all.begin() + static_cast<long>(*best * per_node),
                                            all.begin() + static_cast<long>((*best + 1) * per_node));
  const std::vector<bool> node_passed(passed.begin() + static_cast<long>(*best * per_node),
                                      passed.begin() + static_cast<long>((*best + 1) * per_node));
  auto chosen = smallest_flagged_index(node_samples, node_passed);
  if (!chosen) chosen = modal_index(node_samples);
  auto out = finish(std::move(r), node_samples, chosen, "mcts", &solver, seed);
  out.candidate.elapsed_ms = total_elapsed(all) + prefix_cost;
  return out;
}

MethodResult round_trip(const Solver& solver, const Task& task, const RoundTripOptions& rto, std::uint64_t seed) {
  require_positive(rto.attempts, "rto attempts");
  MethodResult r;
  r.trace = {{"method", "rto"}, {"attempts", json::array()}};
  std::optional<Candidate> last;
  const auto original = folded(task.prompt);
  std::uint64_t cost = 0;
  for (int a = 0; a < rto.attempts; ++a) {
    const auto idx = static_cast<std::uint64_t>(a);
    json entry = {{"index", a + 1}};
    const auto fwd = solver.complete(Query{&task, "forward", fill_template(rto.forward_template, task.prompt)},
                                     derive_seed(seed, "forward", idx));
    cost += fwd.elapsed_ms;
    auto candidate = make_candidate(fwd, task, solver.id(), "rto", derive_seed(seed, "forward", idx));
    entry["forward"] = fwd.error ? json(nullptr) : json(fwd.text);
    bool equivalent = false;
    if (!fwd.error) {
      const auto bwd = solver.complete(Query{&task, "backward", fill_template(rto.backward_template, fwd.text)},
                                       derive_seed(seed, "backward", idx));
      cost += bwd.elapsed_ms;
      entry["backward"] = bwd.error ? json(nullptr) : json(bwd.text);
      if (!bwd.error) {
        if (rto.judge) {
          const auto verdict = rto.judge->complete(
              Query{&task, "judge", "Original:\n" + task.prompt + "\n\nReconstruction:\n" + bwd.text},
              derive_seed(seed, "judge", idx));
          cost += verdict.elapsed_ms;
          equivalent = !verdict.error && parse_decision(verdict.text);
        } else {
          const auto back = folded(bwd.text);
          equivalent = original && back && *original == *back;
        }
      }
    }
    entry["equivalent"] = equivalent;
    r.trace["attempts"].push_back(std::move(entry));
    last = std::move(candidate);
    if (equivalent) break;
  }
  const bool accepted = r.trace["attempts"].back()["equivalent"].get<bool>();
  if (!accepted) r.flags.push_back("round_trip_failed");
  r.trace["accepted"] = accepted;
  r.candidate = *last;
  r.candidate.elapsed_ms = cost;
  return r;
}

MethodResult prover_verifier(const Solver& prover, const Solver& verifier_model, const Task& task, int rounds,
                             std::uint64_t seed) {
  require_positive(rounds, "prover_verifier rounds");
  MethodResult r;
  r.trace = {{"method", "prover_verifier"}, {"transcript", json::array()}};
  std::vector<std::string> messages;
  std::uint64_t cost = 0;
  for (int i = 0; i < rounds; ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    std::string prompt = task.prompt;
    if (!messages.empty()) {
      prompt += "\n\nRejected attempts:";
      for (const auto& m : messages) prompt += "\n- " + m;
    }
    const auto m = prover.complete(Query{&task, "answer", prompt}, slot_seed(seed, idx));
    cost += m.elapsed_ms;
    auto candidate = make_candidate(m, task, prover.id(), "prover_verifier", slot_seed(seed, idx));
    bool accepted = false;
    std::string decision;
    if (!m.error) {
      std::string vprompt = "Problem:\n" + task.prompt + "\n\n";
      for (std::size_t j = 0; j < messages.size(); ++j) {
        vprompt += "Attempt " + std::to_string(j + 1) + ": " + messages[j] + "\n";
      }
      vprompt += "Proposed solution: " + m.text;
      const auto d = verifier_model.complete(Query{&task, "verify", vprompt}, derive_seed(seed, "verify", idx));
      cost += d.elapsed_ms;
      decision = d.error ? "error: " + *d.error : d.text;
      accepted = !d.error && parse_decision(d.text);
      messages.push_back(m.text);
    } else {
      decision = "prover error: " + *m.error;
    }
    r.trace["transcript"].push_back(
        {{"index", i + 1}, {"message", m.error ? json(nullptr) : json(m.text)}, {"decision", decision},
         {"accepted", accepted}});
    r.candidate = std::move(candidate);
    if (accepted) break;
  }
  const bool accepted = r.trace["transcript"].back()["accepted"].get<bool>();
  if (!accepted) r.flags.push_back("unaccepted");
  r.trace["accepted"] = accepted;
  r.candidate.elapsed_ms = cost;
  return r;
}

MethodResult plan_search(const Solver& solver, const Task& task, int n_plans, std::uint64_t seed,
                         const ExecOptions& options) {
  require_positive(n_plans, "plan_search n_plans");
  MethodResult r;
  r.trace = {{"method", "plan_search"}, {"n_plans", n_plans}};
  const auto n = static_cast<std::size_t>(n_plans);
  const auto plans = fan_out<Completion>(n, options.parallel, [&](std::size_t j) {
    return solver.complete(Query{&task, "plan", task.prompt}, derive_seed(seed, "plan", j));
  });
  json plan_log = json::array();
  for (const auto& p : plans) plan_log.push_back(p.error ? json(nullptr) : json(p.text));
  r.trace["plans"] = std::move(plan_log);
  auto samples = fan_out<Candidate>(n, options.parallel, [&](std::size_t j) {
    const auto prompt = plans[j].error ? task.prompt : task.prompt + "\n\nPlan:\n" + plans[j].text;
    return draw(solver, task, "answer", prompt, slot_seed(seed, j), "plan_search");
  });
  for (std::size_t j = 0; j < n; ++j) samples[j].elapsed_ms += plans[j].elapsed_ms;
  return select_verified(std::move(r), samples, task, options, "plan_search", solver, seed);
}

std::vector<std::string> parse_principles(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    start = end + 1;
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    line = line.substr(b);
    if (line.rfind("- ", 0) == 0 || line.rfind("* ", 0) == 0) line = line.substr(2);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\r' || line.back() == '\t')) line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

bool parse_decision(const std::string& text) {
  std::string word;
  for (char ch : text) {
    if (std::isalnum(static_cast<unsigned char>(ch))) {
      word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    } else if (!word.empty()) {
      break;
    }
  }
  return word == "1" || word == "accept" || word == "accepted" || word == "yes" || word == "true" ||
         word == "correct";
}

MethodResult leap(const Solver& solver, const std::vector<Example>& examples, const Task& task,
                  std::uint64_t seed) {
  auto fallback = [&](const std::string& why) {
    auto z = zero_shot(solver, task, seed);
    z.trace["method"] = "leap";
    z.trace["principles"] = json::array();
    z.candidate.method_id = "leap";
    z.warnings.push_back(why);
    return z;
  };
  if (examples.empty()) return fallback("no examples given; solved without principles");

  std::string prompt =
      "Study the worked examples below. State the general principles they rely on, one per line.\n";
  for (std::size_t i = 0; i < examples.size(); ++i) {
    prompt += "\nExample " + std::to_string(i + 1) + "\nProblem: " + examples[i].input +
              "\nAnswer: " + examples[i].output + "\n";
  }
  const auto extracted = solver.complete(Query{&task, "principles", prompt}, derive_seed(seed, "principles", 0));
  if (extracted.error) return fallback("principle extraction failed: " + *extracted.error);
  const auto principles = parse_principles(extracted.text);
  if (principles.empty()) return fallback("principle extraction returned nothing");

  std::string guided = "Use the following principles:\n";
  for (const auto& p : principles) guided += "- " + p + "\n";
  guided += "\n" + task.prompt;

  MethodResult r;
  r.trace = {{"method", "leap"}, {"examples", examples.size()}, {"principles", principles}};
  r.candidate = draw(solver, task, "answer", guided, slot_seed(seed, 0), "leap");
  r.trace["samples"] = json::array({sample_entry(0, r.candidate)});
  r.candidate.elapsed_ms += extracted.elapsed_ms;
  return r;
}

void validate_method_config(const MethodConfig& c) {
  const std::string where = "method " + c.id + ": ";
  if (c.n < 1) throw ConfigError(where + "n must be >= 1");
  if (c.rounds < 1) throw ConfigError(where + "rounds must be >= 1");
  if (!c.weights.empty()) {
    double sum = 0.0;
    for (double w : c.weights) {
      if (!(w >= 0.0)) throw ConfigError(where + "weights must be non-negative");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ConfigError(where + "weights must sum to 1");
    if (c.weights.size() != c.agents.size()) throw ConfigError(where + "one weight per agent required");
  }
  if (c.kind == MethodKind::prover_verifier && c.verifier_solver.empty()) {
    throw ConfigError(where + "prover_verifier needs a verifier solver");
  }
}

MethodConfig method_config_from_json(const json& j) {
  MethodConfig c;
  if (j.is_string()) {
    c.kind = method_kind_from_string(j.get<std::string>());
    c.id = j.get<std::string>();
    return c;
  }
  if (!j.is_object() || !j.contains("method")) throw ConfigError("method entry needs a \"method\" field");
  try {
    c.kind = method_kind_from_string(j.at("method").get<std::string>());
    c.id = j.value("id", std::string(to_string(c.kind)));
    c.n = j.value("n", 1);
    c.rounds = j.value("rounds", 1);
    c.weights = j.value("weights", std::vector<double>{});
    c.agents = j.value("agents", std::vector<std::string>{});
    c.verifier_solver = j.value("verifier", std::string{});
    c.judge_solver = j.value("judge", std::string{});
    c.forward_template = j.value("forward", std::string("{input}"));
    c.backward_template = j.value("backward", std::string("{input}"));
    for (const auto& e : j.value("examples", json::array())) {
      c.examples.push_back({e.at("input").get<std::string>(), e.at("output").get<std::string>()});
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("method entry: ") + e.what());
  }
  validate_method_config(c);
  return c;
}

json to_json(const MethodConfig& c) {
  json j = {{"id", c.id}, {"method", std::string(to_string(c.kind))}, {"n", c.n}, {"rounds", c.rounds}};
  if (!c.weights.empty()) j["weights"] = c.weights;
  if (!c.agents.empty()) j["agents"] = c.agents;
  if (!c.verifier_solver.empty()) j["verifier"] = c.verifier_solver;
  if (!c.judge_solver.empty()) j["judge"] = c.judge_solver;
  if (c.kind == MethodKind::rto) {
    j["forward"] = c.forward_template;
    j["backward"] = c.backward_template;
  }
  if (!c.examples.empty()) {
    j["examples"] = json::array();
    for (const auto& e : c.examples) j["examples"].push_back({{"input", e.input}, {"output", e.output}});
  }
  return j;
}

namespace {

const Solver& lookup(const SolverRegistry& registry, const std::string& id, const std::string& method) {
  auto it = registry.find(id);
  if (it == registry.end() || !it->second) {
    throw ConfigError("method " + method + " references unknown solver '" + id + "'");
  }
  return *it->second;
}

}  // namespace

MethodResult run_method(const MethodConfig& config, const Solver& solver, const SolverRegistry& registry,
                        const Task& task, std::uint64_t seed, const ExecOptions& options) {
  validate_method_config(config);
  MethodResult r;
  switch (config.kind) {
    case MethodKind::zero_shot: r = zero_shot(solver, task, seed); break;
    case MethodKind::best_of_n: r = best_of_n(solver, task, config.n, seed, options); break;
    case MethodKind::self_consistency: r = self_consistency(solver, task, config.n, seed, options); break;
    case MethodKind::mixture_of_agents: {
      std::vector<const Solver*> agents;
      for (const auto& id : config.agents) agents.push_back(&lookup(registry, id, config.id));
      if (agents.empty()) agents.push_back(&solver);
      r = mixture_of_agents(agents, config.weights, task, seed, options);
      break;
    }
    case MethodKind::mcts: r = mcts_resample(solver, task, config.n, seed, options); break;
    case MethodKind::rto: {
      RoundTripOptions rto;
      rto.forward_template = config.forward_template;
      rto.backward_template = config.backward_template;
      rto.attempts = config.n;
      if (!config.judge_solver.empty()) rto.judge = &lookup(registry, config.judge_solver, config.id);
      r = round_trip(solver, task, rto, seed);
      break;
    }
    case MethodKind::prover_verifier:
      r = prover_verifier(solver, lookup(registry, config.verifier_solver, config.id), task, config.rounds, seed);
      break;
    case MethodKind::plan_search: r = plan_search(solver, task, config.n, seed, options); break;
    case MethodKind::leap: r = leap(solver, config.examples, task, seed); break;
  }
  r.candidate.method_id = config.id.empty() ? std::string(to_string(config.kind)) : config.id;
  return r;
}

}  // namespace ttc
