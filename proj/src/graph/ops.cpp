#include "ttc/graph/ops.hpp"

#include <algorithm>
#include <chrono>

#include "ttc/arc/external_program.hpp"
#include "ttc/arc/prompt.hpp"
#include "ttc/arc/verify.hpp"
#include "ttc/core/errors.hpp"
#include "ttc/core/json_io.hpp"
#include "ttc/core/verify.hpp"

namespace ttc::graph {

void OpRegistry::add(OpDef def) {
  auto name = def.name;
  ops_[name] = std::move(def);
}

const OpDef* OpRegistry::find(const std::string& name) const {
  const auto it = ops_.find(name);
  return it == ops_.end() ? nullptr : &it->second;
}

const OpDef& OpRegistry::at(const std::string& name) const {
  const auto* d = find(name);
  if (!d) throw GraphError("unknown operation '" + name + "'");
  return *d;
}

std::vector<std::string> OpRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : ops_) out.push_back(name);
  return out;
}

std::string decorate_prompt(const Node& node, const std::string& prompt) {
  std::string out;
  if (const auto it = node.params.find("instruction"); it != node.params.end() && !it->second.empty()) {
    out += it->second + "\n\n";
  }
  for (const auto& d : node.data) out += "Example:\n" + d + "\n\n";
  return out + prompt;
}

Task task_from_value(const Value& v) {
  if (!v.is_object()) throw ConfigError("task value must be a JSON object");
  if (v.contains("train")) {
    const auto id = v.value("id", std::string("task"));
    return arc::make_arc_task(arc::task_from_json(id, v));
  }
  Task t;
  t.id = v.at("id").get<std::string>();
  t.prompt = v.at("prompt").get<std::string>();
  t.category = v.value("category", std::string());
  if (v.contains("answer_kind")) t.answer_kind = answer_kind_from_string(v.at("answer_kind").get<std::string>());
  if (v.contains("reference") && !v.at("reference").is_null()) {
    const auto& r = v.at("reference");
    t.reference = r.is_string() ? normalize_answer(r.get<std::string>(), t.answer_kind) : answer_from_json(r);
  }
  validate_task(t);
  return t;
}

namespace {

const std::string& required(const Node& n, const std::string& key) {
  const auto it = n.params.find(key);
  if (it == n.params.end() || it->second.empty()) {
    throw GraphError("node '" + n.id + "' (" + n.op + ") needs parameter '" + key + "'");
  }
  return it->second;
}

void check_solver(const Node& n, const std::string& key, const SolverRegistry* solvers) {
  if (!solvers) return;
  const auto it = n.params.find(key);
  if (it == n.params.end() || it->second.empty()) return;
  if (!solvers->count(it->second)) {
    throw GraphError("node '" + n.id + "' refers to unknown solver '" + it->second + "'");
  }
}

const Solver& solver_for(const Node& n, const OpContext& ctx) {
  const auto& id = required(n, "solver");
  if (!ctx.solvers) throw GraphError("no solvers configured for node '" + n.id + "'");
  const auto it = ctx.solvers->find(id);
  if (it == ctx.solvers->end()) throw GraphError("node '" + n.id + "' refers to unknown solver '" + id + "'");
  return *it->second;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

int to_int(const Node& n, const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const int x = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw GraphError("node '" + n.id + "': parameter '" + key + "' must be an integer, got '" + v + "'");
  }
}

MethodConfig method_config(const Node& n) {
  nlohmann::json j{{"method", required(n, "method")}};
  for (const auto& [k, v] : n.params) {
    if (k == "n" || k == "rounds") j[k] = to_int(n, k, v);
    else if (k == "weights") {
      auto arr = nlohmann::json::array();
      for (const auto& w : split_list(v)) {
        try {
          arr.push_back(std::stod(w));
        } catch (const std::exception&) {
          throw GraphError("node '" + n.id + "': bad weight '" + w + "'");
        }
      }
      j[k] = arr;
    } else if (k == "agents") {
      j[k] = split_list(v);
    } else if (k == "verifier" || k == "judge" || k == "forward" || k == "backward" || k == "id") {
      j[k] = v;
    }
  }
  try {
    auto cfg = method_config_from_json(j);
    if (!n.params.count("id")) cfg.id = n.id;
    validate_method_config(cfg);
    return cfg;
  } catch (const ConfigError& e) {
    throw GraphError("node '" + n.id + "': " + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw GraphError("node '" + n.id + "': " + e.what());
  }
}

std::string as_text(const Value& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

OpDef passthrough() {
  OpDef d;
  d.name = "passthrough";
  d.inputs = {"in"};
  d.outputs = {"out"};
  d.run = [](const Node&, const std::map<std::string, Value>& in, const OpContext&) {
    return OpOutcome{{{"out", in.at("in")}}, Value::object()};
  };
  return d;
}

OpDef join() {
  OpDef d;
  d.name = "join";
  d.outputs = {"out"};
  d.variadic = true;
  d.params = {"sep"};
  d.run = [](const Node& n, const std::map<std::string, Value>& in, const OpContext&) {
    OpOutcome o;
    if (const auto it = n.params.find("sep"); it != n.params.end()) {
      std::string s;
      for (const auto& [port, v] : in) s += (s.empty() ? "" : it->second) + as_text(v);
      o.outputs["out"] = s;
    } else {
      auto arr = Value::array();
      for (const auto& [port, v] : in) arr.push_back(v);
      o.outputs["out"] = arr;
    }
    o.info["ports"] = in.size();
    return o;
  };
  return d;
}

OpDef format_prompt_op() {
  OpDef d;
  d.name = "format_prompt";
  d.inputs = {"task"};
  d.outputs = {"prompt"};
  d.prompt_node = true;
  d.params = {"style"};
  d.check = [](const Node& n, const SolverRegistry*) {
    if (const auto it = n.params.find("style"); it != n.params.end()) {
      try {
        arc::prompt_style_from_string(it->second);
      } catch (const std::exception&) {
        throw GraphError("node '" + n.id + "': unknown prompt style '" + it->second + "'");
      }
    }
  };
  d.run = [](const Node& n, const std::map<std::string, Value>& in, const OpContext&) {
    const auto& v = in.at("task");
    std::string prompt;
    if (v.is_object() && v.contains("train")) {
      const auto style = n.params.count("style") ? arc::prompt_style_from_string(n.params.at("style"))
                                                 : arc::PromptStyle::plain;
      prompt = arc::format_prompt(arc::task_from_json(v.value("id", std::string("task")), v), style);
    } else {
      prompt = task_from_value(v).prompt;
    }
    return OpOutcome{{{"prompt", decorate_prompt(n, prompt)}}, Value::object()};
  };
  return d;
}

OpDef sample_op() {
  OpDef d;
  d.name = "sample";
  d.inputs = {"task", "prompt"};
  d.outputs = {"candidate"};
  d.prompt_node = true;
  d.params = {"solver", "role"};
  d.check = [](const Node& n, const SolverRegistry* solvers) {
    required(n, "solver");
    check_solver(n, "solver", solvers);
  };
  d.run = [](const Node& n, const std::map<std::string, Value>& in, const OpContext& ctx) {
    const auto task = task_from_value(in.at("task"));
    const auto& solver = solver_for(n, ctx);
    const auto role = n.params.count("role") ? n.params.at("role") : std::string("answer");
    Query q{&task, role, decorate_prompt(n, as_text(in.at("prompt")))};
    const auto completion = solver.complete(q, ctx.seed);
    const auto cand = make_candidate(completion, task, solver.id(), "sample", ctx.seed);
    OpOutcome o;
    o.outputs["candidate"] = to_json(cand);
    o.info = {{"solver", solver.id()}, {"role", role}, {"samples", 1}};
    return o;
  };
  return d;
}

OpDef method_op() {
  OpDef d;
  d.name = "method";
  d.inputs = {"task"};
  d.outputs = {"candidate"};
  d.prompt_node = true;
  d.params = {"solver", "method", "n", "rounds", "weights", "agents", "verifier", "judge", "forward", "backward", "id"};
  d.check = [](const Node& n, const SolverRegistry* solvers) {
    required(n, "solver");
    method_config(n);
    for (const auto* key : {"solver", "verifier", "judge"}) check_solver(n, key, solvers);
    if (solvers && n.params.count("agents")) {
      for (const auto& a : split_list(n.params.at("agents")))
        if (!solvers->count(a)) throw GraphError("node '" + n.id + "' refers to unknown solver '" + a + "'");
    }
  };
  d.run = [](const Node& n, const std::map<std::string, Value>& in, const OpContext& ctx) {
    auto task = task_from_value(in.at("task"));
    task.prompt = decorate_prompt(n, task.prompt);
    const auto cfg = method_config(n);
    const auto& solver = solver_for(n, ctx);
    static const SolverRegistry kEmpty;
    auto result = run_method(cfg, solver, ctx.solvers ? *ctx.solvers : kEmpty, task, ctx.seed, ctx.exec);
    OpOutcome o;
    o.outputs["candidate"] = to_json(result.candidate);
    o.info = {{"method", std::string(to_string(cfg.kind))}, {"trace", result.trace}};
    if (result.trace.contains("samples") && result.trace["samples"].is_array()) {
      o.info["samples"] = result.trace["samples"].size();
    }
    if (!result.warnings.empty()) o.info["warnings"] = result.warnings;
    if (!result.flags.empty()) o.info["flags"] = result.flags;
    return o;
  };
  return d;
}

OpDef verify_op() {
  OpDef d;
  d.name = "verify";
  d.inputs = {"task", "candidate"};
  d.outputs = {"verdict"};
  d.run = [](const Node&, const std::map<std::string, Value>& in, const OpContext& ctx) {
    const auto task = task_from_value(in.at("task"));
    const auto cand = candidate_from_json(in.at("candidate"));
    const auto verdict = verify(task, cand, ctx.exec.verify);
    OpOutcome o;
    o.outputs["verdict"] = to_json(verdict);
    o.info = {{"status", std::string(to_string(verdict.status()))}};
    return o;
  };
  return d;
}

OpDef stub_op() {
  OpDef d;
  d.name = "stub";
  d.inputs = {"in"};
  d.outputs = {"out"};
  d.params = {"value", "label"};
  d.run = [](const Node& n, const std::map<std::string, Value>& in, const OpContext&) {
    const auto it = n.params.find("value");
    return OpOutcome{{{"out", it == n.params.end() ? in.at("in") : Value(it->second)}}, Value::object()};
  };
  return d;
}

OpDef external_op() {
  OpDef d;
  d.name = "external";
  d.inputs = {"in"};
  d.outputs = {"out"};
  d.params = {"command", "timeout_ms"};
  d.check = [](const Node& n, const SolverRegistry*) {
    try {
      if (arc::split_command_line(required(n, "command")).empty()) throw GraphError("empty command");
    } catch (const std::invalid_argument& e) {
      throw GraphError("node '" + n.id + "': " + e.what());
    }
    if (n.params.count("timeout_ms") && to_int(n, "timeout_ms", n.params.at("timeout_ms")) <= 0) {
      throw GraphError("node '" + n.id + "': timeout_ms must be positive");
    }
  };
  d.run = [](const Node& n, const std::map<std::string, Value>& in, const OpContext&) {
    const auto argv = arc::split_command_line(n.params.at("command"));
    const auto timeout = std::chrono::milliseconds(
        n.params.count("timeout_ms") ? to_int(n, "timeout_ms", n.params.at("timeout_ms")) : 10'000);
    const auto out = arc::run_process(argv, as_text(in.at("in")), timeout);
    return OpOutcome{{{"out", out}}, {{"bytes", out.size()}}};
  };
  return d;
}

}  // namespace

const OpRegistry& OpRegistry::builtin() {
  static const OpRegistry reg = [] {
    OpRegistry r;
    for (auto d : {passthrough(), join(), format_prompt_op(), sample_op(), method_op(), verify_op(), stub_op(),
                   external_op()}) {
      r.add(std::move(d));
    }
    return r;
  }();
  return reg;
}

void validate(const PipelineGraph& g, const OpRegistry& ops, const SolverRegistry* solvers) {
  std::set<std::string> inputs;
  for (const auto& i : g.inputs)
    if (!inputs.insert(i).second) throw GraphError("duplicate graph input '" + i + "'");
  std::set<std::string> ids;
  for (const auto& n : g.nodes) {
    if (n.id.empty()) throw GraphError("node with empty id");
    if (inputs.count(n.id)) throw GraphError("node id '" + n.id + "' clashes with a graph input");
    if (!ids.insert(n.id).second) throw GraphError("duplicate node id '" + n.id + "'");
    const auto& def = ops.at(n.op);
    for (const auto& [k, v] : n.params) {
      if (!def.params.count(k) && !(def.prompt_node && k == "instruction")) {
        throw GraphError("node '" + n.id + "' (" + n.op + ") has unknown parameter '" + k + "'");
      }
    }
    if (!n.data.empty() && !def.prompt_node) {
      throw GraphError("node '" + n.id + "' (" + n.op + ") does not take data snippets");
    }
    if (def.check) def.check(n, solvers);
  }

  auto source_ok = [&](const PortRef& from) {
    if (from.is_graph_input()) return inputs.count(from.node) > 0;
    const Node* n = g.find(from.node);
    if (!n) return false;
    const auto& outs = ops.at(n->op).outputs;
    return std::find(outs.begin(), outs.end(), from.port) != outs.end();
  };

  std::map<PortRef, int> fed;
  for (const auto& e : g.edges) {
    if (!source_ok(e.from)) throw GraphError("edge from unknown source '" + to_string(e.from) + "'");
    const Node* n = g.find(e.to.node);
    if (!n || e.to.is_graph_input()) throw GraphError("edge into unknown node port '" + to_string(e.to) + "'");
    const auto& def = ops.at(n->op);
    if (!def.variadic && std::find(def.inputs.begin(), def.inputs.end(), e.to.port) == def.inputs.end()) {
      throw GraphError("node '" + n->id + "' (" + n->op + ") has no input port '" + e.to.port + "'");
    }
    if (++fed[e.to] > 1) throw GraphError("input port '" + to_string(e.to) + "' is fed more than once");
  }
  for (const auto& n : g.nodes) {
    const auto& def = ops.at(n.op);
    if (def.variadic) {
      const bool any = std::any_of(fed.begin(), fed.end(), [&](const auto& f) { return f.first.node == n.id; });
      if (!any) throw GraphError("node '" + n.id + "' (" + n.op + ") needs at least one input");
      continue;
    }
    for (const auto& p : def.inputs)
      if (!fed.count(PortRef{n.id, p})) throw GraphError("input port '" + n.id + "." + p + "' is not connected");
  }

  std::set<std::string> names;
  for (const auto& o : g.outputs) {
    if (!names.insert(o.name).second) throw GraphError("duplicate graph output '" + o.name + "'");
    if (!source_ok(o.from)) throw GraphError("output '" + o.name + "' reads unknown source '" + to_string(o.from) + "'");
  }
  topological_order(g);
}

}  // namespace ttc::graph
