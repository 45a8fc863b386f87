#include "ttc/graph/execute.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "ttc/core/digest.hpp"
#include "ttc/core/seed.hpp"
#include "ttc/methods/parallel.hpp"

namespace ttc::graph {

const TraceEntry* Trace::find(const std::string& node) const {
  for (const auto& e : entries)
    if (e.node == node) return &e;
  return nullptr;
}

std::string value_digest(const Value& v) { return sha256_hex(v.dump()); }

namespace {

struct NodeRun {
  TraceEntry entry;
  std::map<std::string, Value> outputs;
};

}  // namespace

ExecutionResult execute(const PipelineGraph& g, const std::map<std::string, Value>& inputs,
                        const ExecuteOptions& options) {
  const OpRegistry& ops = options.ops ? *options.ops : OpRegistry::builtin();
  static const SolverRegistry kNoSolvers;
  validate(g, ops, options.solvers ? options.solvers : &kNoSolvers);
  for (const auto& name : g.inputs)
    if (!inputs.count(name)) throw GraphError("missing graph input '" + name + "'");
  for (const auto& [name, _] : inputs)
    if (std::find(g.inputs.begin(), g.inputs.end(), name) == g.inputs.end()) {
      throw GraphError("undeclared graph input '" + name + "'");
    }

  const auto order = topological_order(g);
  std::map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;

  // depth = longest path from a source; nodes of equal depth are independent
  std::map<std::string, int> depth;
  int max_depth = 0;
  for (const auto& id : order) {
    int d = 0;
    for (const auto& p : predecessors(g, id)) d = std::max(d, depth[p] + 1);
    depth[id] = d;
    max_depth = std::max(max_depth, d);
  }

  std::map<std::string, NodeRun> done;
  std::set<std::string> failed;  // failed or skipped
  ExecutionResult result;

  auto gather = [&](const std::string& id, std::map<std::string, Value>& in) {
    for (const auto& e : g.edges) {
      if (e.to.node != id) continue;
      if (e.from.is_graph_input()) in[e.to.port] = inputs.at(e.from.node);
      else if (failed.count(e.from.node)) return false;
      else in[e.to.port] = done.at(e.from.node).outputs.at(e.from.port);
    }
    return true;
  };

  for (int level = 0; level <= max_depth; ++level) {
    std::vector<std::string> wave;
    std::vector<std::map<std::string, Value>> wave_inputs;
    for (const auto& id : order) {
      if (depth[id] != level) continue;
      std::map<std::string, Value> in;
      if (!gather(id, in)) {
        failed.insert(id);
        result.trace.skipped.push_back(id);
        continue;
      }
      wave.push_back(id);
      wave_inputs.push_back(std::move(in));
    }
    auto runs = fan_out<NodeRun>(wave.size(), options.parallel, [&](std::size_t i) {
      const Node& node = *g.find(wave[i]);
      NodeRun run;
      run.entry.node = node.id;
      run.entry.op = node.op;
      Value in_json = Value::object();
      for (const auto& [port, v] : wave_inputs[i]) in_json[port] = v;
      run.entry.inputs_digest = value_digest(in_json);
      OpContext ctx{options.solvers, derive_seed(options.seed, node.id), options.exec};
      const auto start = std::chrono::steady_clock::now();
      try {
        const auto& def = ops.at(node.op);
        auto outcome = def.run(node, wave_inputs[i], ctx);
        for (const auto& port : def.outputs)
          if (!outcome.outputs.count(port)) throw GraphError("operation produced no '" + port + "' output");
        Value out_json = Value::object();
        for (const auto& [port, v] : outcome.outputs) out_json[port] = v;
        run.entry.output_digest = value_digest(out_json);
        run.entry.info = std::move(outcome.info);
        run.outputs = std::move(outcome.outputs);
      } catch (const std::exception& e) {
        run.entry.error = e.what();
      }
      run.entry.elapsed_ms = static_cast<std::uint64_t>(
          std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count());
      return run;
    });
    for (auto& run : runs) {
      if (run.entry.error) failed.insert(run.entry.node);
      const auto id = run.entry.node;
      done.emplace(id, std::move(run));
    }
  }

  for (const auto& id : order)
    if (const auto it = done.find(id); it != done.end()) result.trace.entries.push_back(it->second.entry);

  for (const auto& o : g.outputs) {
    if (o.from.is_graph_input()) {
      result.outputs[o.name] = inputs.at(o.from.node);
    } else if (failed.count(o.from.node)) {
      result.missing.push_back(o.name);
    } else {
      result.outputs[o.name] = done.at(o.from.node).outputs.at(o.from.port);
    }
  }
  return result;
}

nlohmann::json to_json(const Trace& trace, bool with_timing) {
  auto entries = nlohmann::json::array();
  for (const auto& e : trace.entries) {
    nlohmann::json j{{"node", e.node},
                     {"op", e.op},
                     {"inputs_digest", e.inputs_digest},
                     {"output_digest", e.output_digest},
                     {"error", e.error ? nlohmann::json(*e.error) : nlohmann::json(nullptr)},
                     {"info", e.info}};
    if (with_timing) j["elapsed_ms"] = e.elapsed_ms;
    entries.push_back(std::move(j));
  }
  return {{"entries", entries}, {"skipped", trace.skipped}};
}

}  // namespace ttc::graph
