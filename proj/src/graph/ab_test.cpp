#include "ttc/graph/ab_test.hpp"


#include "ttc/core/errors.hpp"
#include "ttc/core/seed.hpp"

namespace ttc::graph {

bool solved(const ExecutionResult& r) {
  const auto it = r.outputs.find("verdict");
  return it != r.outputs.end() && it->second.is_object() && it->second.value("status", "") == "pass";
}

namespace {

ExecutionResult run_one(const PipelineGraph& g, const GraphTask& t, const ExecuteOptions& options) {
  auto opts = options;
  opts.seed = derive_seed(options.seed, t.id);
  return execute(g, {{"task", t.input}}, opts);
}

std::uint64_t total_ms(const Trace& trace) {
  std::uint64_t ms = 0;
  for (const auto& e : trace.entries) ms += e.elapsed_ms;
  return ms;
}

}  // namespace

ResultMatrix ab_test(const std::vector<Variant>& variants, const std::vector<GraphTask>& tasks,
                     const ExecuteOptions& options) {
  if (variants.size() < 2) throw ConfigError("an A/B test needs at least 2 variants");
  if (tasks.empty()) throw ConfigError("an A/B test needs at least one task");
  std::vector<std::string> names, ids;
  for (const auto& v : variants) {
    const OpRegistry& ops = options.ops ? *options.ops : OpRegistry::builtin();
    validate(v.graph, ops, options.solvers);
    names.push_back(v.name);
  }
  for (const auto& t : tasks) ids.push_back(t.id);
  ResultMatrix m(ids, names);  // rejects duplicates
  for (std::size_t s = 0; s < variants.size(); ++s) {
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      try {
        const auto r = run_one(variants[s].graph, tasks[t], options);
        m.set_solved(t, s, solved(r));
        m.set_elapsed_ms(t, s, total_ms(r.trace));
      } catch (const std::exception&) {
        m.set_solved(t, s, false);
      }
    }
  }
  return m;
}

RevisionDecision revise_and_test(const PipelineGraph& g, const std::vector<GraphTask>& tasks, const Solver& judge,
                                 const ExecuteOptions& options) {
  if (tasks.empty()) throw ConfigError("revision needs at least one task");
  const OpRegistry& ops = options.ops ? *options.ops : OpRegistry::builtin();
  RevisionDecision d;
  d.graph = g;

  std::size_t passed = 0;
  Trace first_trace;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    try {
      auto r = run_one(g, tasks[t], options);
      passed += solved(r) ? 1 : 0;
      if (t == 0) first_trace = r.trace;
    } catch (const std::exception&) {
    }
  }
  d.baseline_rate = static_cast<double>(passed) / static_cast<double>(tasks.size());
  d.variant_rate = d.baseline_rate;

  const Value summary{{"tasks", tasks.size()}, {"solved", passed}, {"success_rate", d.baseline_rate}};
  d.proposal = propose_revision(g, first_trace, summary, judge, derive_seed(options.seed, "revision"), ops,
                                options.solvers);

  PipelineGraph variant = g;
  for (const auto& m : d.proposal.mutations) {
    try {
      variant = mutate(variant, m, ops, options.solvers);
      d.applied.push_back(m);
    } catch (const std::exception& e) {
      d.warnings.push_back(to_string(m) + ": " + e.what());
    }
  }
  if (d.applied.empty()) return d;

  const auto matrix = ab_test({{"baseline", g}, {"variant", variant}}, tasks, options);
  d.variant_rate = static_cast<double>(column_count(matrix, 1)) / static_cast<double>(tasks.size());
  d.kept = d.variant_rate > d.baseline_rate;
  if (d.kept) d.graph = variant;
  return d;
}

nlohmann::json to_json(const RevisionDecision& d) {
  auto applied = nlohmann::json::array();
  for (const auto& m : d.applied) applied.push_back(to_string(m));
  return {{"kept", d.kept},
          {"baseline_rate", d.baseline_rate},
          {"variant_rate", d.variant_rate},
          {"proposal", to_json(d.proposal)},
          {"applied", applied},
          {"warnings", d.warnings}};
}

}  // namespace ttc::graph
