#include "ttc/cli/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "ttc/adapters/solver_factory.hpp"
#include "ttc/arc/task.hpp"
#include "ttc/core/errors.hpp"
#include "ttc/graph/ops.hpp"

namespace ttc::cli {

namespace {

nlohmann::json read_json_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return nlohmann::json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(file.string() + ": " + e.what(), e.byte);
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

std::string param_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return v.dump();
  return v.dump();  // inline objects, e.g. script_json
}

}  // namespace

RunConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known{"solvers", "methods", "tasks", "out", "parallel",
                                           "seed",    "layout",  "curve"};
  for (const auto& [k, _] : j.items())
    if (!known.count(k)) throw ConfigError("unknown config field '" + k + "'");

  RunConfig c;
  c.base_dir = base_dir;
  try {
    for (const auto& s : j.value("solvers", nlohmann::json::array())) {
      SolverBinding b;
      b.id = s.at("id").get<std::string>();
      b.kind = solver_kind_from_string(s.value("kind", std::string("scripted")));
      const auto params = s.value("params", nlohmann::json::object());
      for (const auto& [k, v] : params.items()) b.params[k] = param_text(v);
      c.solvers.push_back(std::move(b));
    }
    if (j.contains("methods")) {
      for (const auto& m : j.at("methods")) c.methods.push_back(method_config_from_json(m));
    } else {
      c.methods.push_back(method_config_from_json("zero_shot"));
    }
    c.tasks = j.value("tasks", nlohmann::json());
    c.out_dir = j.value("out", std::string("runs"));
    c.parallel = j.value("parallel", 1);
    c.seed = j.value("seed", std::uint64_t{0});
    const auto layout = j.value("layout", std::string("solvers_as_rows"));
    if (layout == "solvers_as_rows") c.layout = TableLayout::solvers_as_rows;
    else if (layout == "tasks_as_rows") c.layout = TableLayout::tasks_as_rows;
    else throw ConfigError("unknown layout '" + layout + "'");
    c.curve = curve_ordering_from_string(j.value("curve", std::string("individual_desc")));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (c.parallel < 1) throw ConfigError("parallel must be >= 1");
  std::set<std::string> ids;
  for (const auto& m : c.methods) {
    validate_method_config(m);
    if (!ids.insert(m.id).second) throw ConfigError("duplicate method id '" + m.id + "'");
  }
  std::set<std::string> solver_ids;
  for (const auto& s : c.solvers)
    if (!solver_ids.insert(s.id).second) throw ConfigError("duplicate solver id '" + s.id + "'");
  for (const auto& m : c.methods) {
    auto need = [&](const std::string& id) {
      if (!id.empty() && !solver_ids.count(id)) {
        throw ConfigError("method '" + m.id + "' refers to unknown solver '" + id + "'");
      }
    };
    for (const auto& a : m.agents) need(a);
    need(m.verifier_solver);
    need(m.judge_solver);
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& file) {
  return config_from_json(read_json_file(file), file.parent_path());
}

nlohmann::json snapshot(const RunConfig& c) {
  auto solvers = nlohmann::json::array();
  for (const auto& s : c.solvers) {
    solvers.push_back({{"id", s.id}, {"kind", std::string(to_string(s.kind))}, {"params", s.params}});
  }
  auto methods = nlohmann::json::array();
  for (const auto& m : c.methods) methods.push_back(to_json(m));
  return {{"solvers", solvers},
          {"methods", methods},
          {"tasks", c.tasks},
          {"seed", c.seed},
          {"layout", c.layout == TableLayout::solvers_as_rows ? "solvers_as_rows" : "tasks_as_rows"},
          {"curve", c.curve == CurveOrdering::individual_desc ? "individual_desc" : "greedy_marginal"}};
}

std::vector<std::pair<std::string, nlohmann::json>> load_task_values(const nlohmann::json& source,
                                                                     const std::filesystem::path& base_dir) {
  std::vector<std::pair<std::string, nlohmann::json>> out;
  auto add = [&](nlohmann::json v, const std::string& fallback_id) {
    if (!v.is_object()) throw ConfigError("task entries must be JSON objects");
    if (!v.contains("id")) v["id"] = fallback_id;
    out.emplace_back(v.at("id").get<std::string>(), std::move(v));
  };
  if (source.is_null()) throw ConfigError("no tasks configured");
  if (source.is_array()) {
    for (std::size_t i = 0; i < source.size(); ++i) add(source[i], "task" + std::to_string(i));
    return out;
  }
  if (!source.is_string()) throw ConfigError("tasks must be a path or an array");
  const auto path = resolve(base_dir, source.get<std::string>());
  if (std::filesystem::is_directory(path)) {
    const auto report = arc::load_tasks(path);
    if (!report.failures.empty()) {
      throw ConfigError("invalid task file " + report.failures.front().task_id + ": " + report.failures.front().reason);
    }
    for (const auto& t : report.tasks) {
      auto v = arc::task_to_json(t);
      v["id"] = t.id;
      out.emplace_back(t.id, std::move(v));
    }
    return out;
  }
  const auto j = read_json_file(path);
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) add(j[i], "task" + std::to_string(i));
  } else {
    add(j, path.stem().string());
  }
  return out;
}

std::vector<Task> load_tasks(const nlohmann::json& source, const std::filesystem::path& base_dir) {
  std::vector<Task> out;
  std::set<std::string> ids;
  for (const auto& [id, v] : load_task_values(source, base_dir)) {
    if (!ids.insert(id).second) throw ConfigError("duplicate task id '" + id + "'");
    try {
      out.push_back(graph::task_from_value(v));
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError("task '" + id + "': " + e.what());
    }
  }
  return out;
}

}  // namespace ttc::cli
