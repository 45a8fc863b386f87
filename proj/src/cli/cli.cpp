#include "ttc/cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ttc/adapters/solver_factory.hpp"
#include "ttc/aggregate/coverage.hpp"
#include "ttc/aggregate/render.hpp"
#include "ttc/arc/augment.hpp"
#include "ttc/arc/dsl.hpp"
#include "ttc/arc/prompt.hpp"
#include "ttc/arc/verify.hpp"
#include "ttc/core/digest.hpp"
#include "ttc/core/errors.hpp"
#include "ttc/core/seed.hpp"
#include "ttc/core/verify.hpp"
#include "ttc/games/catalog.hpp"
#include "ttc/games/coinflip.hpp"
#include "ttc/games/ninja.hpp"
#include "ttc/games/sequence.hpp"
#include "ttc/games/turbo.hpp"
#include "ttc/games/value_iteration.hpp"
#include "ttc/graph/ab_test.hpp"
#include "ttc/graph/graph_io.hpp"
#include "ttc/methods/parallel.hpp"

namespace ttc::cli {

namespace fs = std::filesystem;
using nlohmann::json;

/// Verification failed (exit 1), as opposed to a broken invocation.
class VerificationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace {

void write_file(const fs::path& file, const std::string& text) {
  if (file.has_parent_path()) fs::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << text;
}

std::string read_file(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const fs::path& file) {
  const auto text = read_file(file);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(file.string() + ": " + e.what(), e.byte);
  }
}

arc::ArcTask read_arc_task(const fs::path& file) {
  try {
    return arc::task_from_json(file.stem().string(), read_json(file));
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(file.string() + ": " + e.what());
  }
}

}  // namespace

std::string column_id(const RunConfig& config, const std::string& solver, const std::string& method) {
  if (config.solvers.size() == 1) return method;
  if (config.methods.size() == 1) return solver;
  return solver + "/" + method;
}

EvalOutcome run_eval(const RunConfig& config) {
  if (config.solvers.empty()) throw ConfigError("no solvers configured");
  const auto tasks = load_tasks(config.tasks, config.base_dir);
  if (tasks.empty()) throw ConfigError("no tasks configured");
  const auto registry = make_solvers(config.solvers, config.base_dir);

  struct Job {
    const Task* task;
    const SolverBinding* solver;
    const MethodConfig* method;
    std::string column;
  };
  std::vector<Job> jobs;
  for (const auto& task : tasks)
    for (const auto& s : config.solvers)
      for (const auto& m : config.methods) jobs.push_back({&task, &s, &m, column_id(config, s.id, m.id)});

  RunRecord record;
  record.config = snapshot(config);
  record.run_id = "run-" + sha256_hex(record.config.dump()).substr(0, 12);
  record.started_at = utc_timestamp();
  record.cells = fan_out<RunCell>(jobs.size(), config.parallel, [&](std::size_t i) {
    const auto& job = jobs[i];
    const auto seed = derive_seed(derive_seed(config.seed, job.column), job.task->id);
    RunCell cell;
    cell.task_id = job.task->id;
    cell.solver_id = job.column;
    try {
      auto result = run_method(*job.method, *registry.at(job.solver->id), registry, *job.task, seed);
      cell.candidate = std::move(result.candidate);
      cell.trace = json::array({result.trace});
    } catch (const std::exception& e) {
      cell.candidate = Candidate::failed(job.solver->id, job.method->id, seed, e.what());
    }
    cell.verdict = verify(*job.task, cell.candidate);
    return cell;
  });
  record.finished_at = utc_timestamp();

  RunStore store(config.out_dir.is_absolute() || config.base_dir.empty() ? config.out_dir
                                                                          : config.base_dir / config.out_dir);
  EvalOutcome outcome{store.record_run(record), {}, record, matrix_from_record(record)};
  outcome.record.run_id = outcome.run_id;
  outcome.run_dir = store.run_dir(outcome.run_id);
  RenderOptions ro;
  ro.layout = config.layout;
  write_file(outcome.run_dir / "table.txt", render_matrix(outcome.matrix, ro));
  write_file(outcome.run_dir / "curve.csv", curve_to_csv(coverage_curve(outcome.matrix, config.curve)));
  write_file(outcome.run_dir / "matrix.json", matrix_to_json(outcome.matrix).dump(2) + "\n");
  return outcome;
}

namespace {

struct Globals {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> parallel;
  std::string out;
};

RunConfig effective_config(const Globals& g, bool required) {
  RunConfig c;
  if (!g.config.empty()) c = load_config(g.config);
  else if (required) throw ConfigError("--config is required");
  if (g.seed) c.seed = *g.seed;
  if (g.parallel) {
    if (*g.parallel < 1) throw ConfigError("--parallel must be >= 1");
    c.parallel = *g.parallel;
  }
  if (!g.out.empty()) c.out_dir = fs::absolute(g.out);
  return c;
}

std::string summary_line(const ResultMatrix& m) {
  std::ostringstream s;
  const auto solved = solved_count(m);
  char pct[32];
  std::snprintf(pct, sizeof pct, "%.2f", 100.0 * success_rate(m));
  s << "coverage: " << solved << "/" << m.num_tasks() << " (" << pct << "%)";
  return s.str();
}

// arc

std::string program_text(const std::string& inline_text, const std::string& file) {
  if (!inline_text.empty() && !file.empty()) throw ConfigError("give --program or --program-file, not both");
  if (!file.empty()) return read_file(file);
  if (inline_text.empty()) throw ConfigError("--program or --program-file is required");
  return inline_text;
}

int arc_verify(const std::string& task_file, const std::string& program, int timeout_ms, std::ostream& out) {
  const auto task = read_arc_task(task_file);
  const auto p = arc::parse_program_text(program, std::chrono::milliseconds(timeout_ms));
  const auto verdict = arc::verify_program(p, task);
  for (const auto& c : verdict.checks()) {
    out << c.name << ": " << (c.passed ? "pass" : "fail");
    if (!c.passed && !c.detail.empty()) out << ": " << c.detail;
    out << "\n";
  }
  out << "verdict: " << to_string(verdict.status());
  if (verdict.status() == VerdictStatus::error) out << " (" << verdict.error_cause() << ")";
  out << "\n";
  return verdict.passed() ? kExitOk : kExitVerifyFailed;
}

int arc_predict(const std::string& task_file, const std::string& program, int timeout_ms, bool unsafe,
                const std::string& out_file, std::ostream& out) {
  const auto task = read_arc_task(task_file);
  const auto p = arc::parse_program_text(program, std::chrono::milliseconds(timeout_ms));
  std::vector<arc::Grid> grids;
  try {
    grids = arc::predict(p, task, unsafe);
  } catch (const arc::UnverifiedProgramError& e) {
    throw VerificationFailed(e.what());
  }
  json record = json::array();
  for (std::size_t i = 0; i < grids.size(); ++i) {
    out << "test " << i << ":\n" << grids[i].to_text() << "\n";
    record.push_back(grids[i].rows());
  }
  if (!out_file.empty()) write_file(out_file, record.dump() + "\n");
  return kExitOk;
}

int arc_augment(const std::string& task_file, const std::string& out_dir, std::ostream& out) {
  const auto task = read_arc_task(task_file);
  const auto variants = arc::augment(task);
  for (const auto& v : variants) {
    if (!out_dir.empty()) arc::save_task(v, fs::path(out_dir) / (v.id + ".json"));
    out << v.id << "\n";
  }
  out << variants.size() << " variants\n";
  return kExitOk;
}

int arc_loo(const std::string& task_file, const std::string& out_dir, std::ostream& out, std::ostream& err) {
  const auto task = read_arc_task(task_file);
  std::string warning;
  const auto folds = arc::leave_one_out(task, &warning);
  if (!warning.empty()) err << "warning: " << warning << "\n";
  for (const auto& f : folds) {
    if (!out_dir.empty()) arc::save_task(f.task, fs::path(out_dir) / (f.task.id + ".json"));
    out << f.task.id << "\n";
  }
  out << folds.size() << " folds\n";
  return kExitOk;
}

// games

int print_game(std::ostream& out, const std::string& headline, const std::string& detail, const json& record) {
  out << headline << "\n";
  if (!detail.empty()) out << detail << "\n";
  out << "record: " << record.dump() << "\n";
  return kExitOk;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s;
}

json parse_game_params(const std::vector<std::string>& kvs) {
  json p = json::object();
  for (const auto& kv : kvs) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--param expects key=value, got '" + kv + "'");
    try {
      std::size_t used = 0;
      const int v = std::stoi(kv.substr(eq + 1), &used);
      if (used != kv.size() - eq - 1) throw std::invalid_argument(kv);
      p[kv.substr(0, eq)] = v;
    } catch (const std::exception&) {
      throw ConfigError("--param " + kv + ": value must be an integer");
    }
  }
  return p;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Test-time compute toolkit: evaluation, ARC programs, games, agent graphs", "ttc"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "Run configuration (JSON)");
  app.add_option("--seed", g.seed, "Root seed (overrides the config)");
  app.add_option("--parallel", g.parallel, "Concurrent workers");
  app.add_option("--out", g.out, "Output directory or file");

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate every task with every solver and method");

  // arc
  auto* arc_cmd = app.add_subcommand("arc", "ARC task tools");
  arc_cmd->require_subcommand(1);
  std::string task_file, program, program_file, style = "plain";
  int timeout_ms = 10'000;
  bool unsafe = false;
  auto add_program = [&](CLI::App* c) {
    c->add_option("--task", task_file, "ARC task file")->required();
    c->add_option("--program", program, "DSL source, or !<command> for an external program");
    c->add_option("--program-file", program_file, "File holding the program");
    c->add_option("--timeout-ms", timeout_ms, "External program timeout")->check(CLI::PositiveNumber);
  };
  auto* arc_verify_cmd = arc_cmd->add_subcommand("verify", "Check a program against the train pairs");
  add_program(arc_verify_cmd);
  auto* arc_predict_cmd = arc_cmd->add_subcommand("predict", "Apply a verified program to the test inputs");
  add_program(arc_predict_cmd);
  arc_predict_cmd->add_flag("--unsafe", unsafe, "Skip verification");
  auto* arc_augment_cmd = arc_cmd->add_subcommand("augment", "Write the D4 orbit of a task");
  arc_augment_cmd->add_option("--task", task_file, "ARC task file")->required();
  auto* arc_loo_cmd = arc_cmd->add_subcommand("loo", "Write leave-one-out folds");
  arc_loo_cmd->add_option("--task", task_file, "ARC task file")->required();
  auto* arc_prompt_cmd = arc_cmd->add_subcommand("prompt", "Print the solver prompt for a task");
  arc_prompt_cmd->add_option("--task", task_file, "ARC task file")->required();
  arc_prompt_cmd->add_option("--style", style, "plain or program");

  // game
  auto* game_cmd = app.add_subcommand("game", "Exact game solvers and simulation");
  game_cmd->require_subcommand(1);
  int a = 0, b = 0;
  auto* coin_cmd = game_cmd->add_subcommand("coinflip", "Can an m x n board be turned all heads?");
  coin_cmd->add_option("m", a)->required();
  coin_cmd->add_option("n", b)->required();
  auto* seq_cmd = game_cmd->add_subcommand("sequence", "Longest sequence without a zero signed block");
  seq_cmd->add_option("bound", a)->required();
  auto* ninja_cmd = game_cmd->add_subcommand("ninja", "Guaranteed red circles on a ninja path");
  ninja_cmd->add_option("n", a)->required();
  auto* turbo_cmd = game_cmd->add_subcommand("turbo", "Attempts Turbo needs to cross the board");
  turbo_cmd->add_option("rows", a)->required();
  turbo_cmd->add_option("cols", b)->required();
  std::string game_name;
  std::vector<std::string> game_params;
  int episodes = 1, max_steps = 1000;
  double gamma = 0.99, tol = 1e-9;
  auto* sim_cmd = game_cmd->add_subcommand("simulate", "Random-policy episodes");
  sim_cmd->add_option("name", game_name)->required();
  sim_cmd->add_option("--param", game_params, "key=value game parameter");
  sim_cmd->add_option("--episodes", episodes)->check(CLI::PositiveNumber);
  sim_cmd->add_option("--max-steps", max_steps)->check(CLI::PositiveNumber);
  auto* vi_cmd = game_cmd->add_subcommand("value-iterate", "Tabular values and greedy policy");
  vi_cmd->add_option("name", game_name)->required();
  vi_cmd->add_option("--param", game_params, "key=value game parameter");
  vi_cmd->add_option("--gamma", gamma);
  vi_cmd->add_option("--tol", tol);
  vi_cmd->add_option("--max-steps", max_steps)->check(CLI::PositiveNumber);

  // graph
  auto* graph_cmd = app.add_subcommand("graph", "Agent graph execution and revision");
  graph_cmd->require_subcommand(1);
  std::vector<std::string> graph_files, mutations, inputs;
  std::string tasks_file, judge;
  auto* graph_run = graph_cmd->add_subcommand("run", "Execute a graph");
  graph_run->add_option("--graph", graph_files, "Graph file")->required()->expected(1);
  graph_run->add_option("--task", task_file, "Task file bound to input 'task'");
  graph_run->add_option("--input", inputs, "name=file for other graph inputs");
  auto* graph_mutate = graph_cmd->add_subcommand("mutate", "Apply mutations to a graph");
  graph_mutate->add_option("--graph", graph_files, "Graph file")->required()->expected(1);
  graph_mutate->add_option("--mutation", mutations, "KIND target payload")->required();
  auto* graph_ab = graph_cmd->add_subcommand("abtest", "Run graph variants over a task set");
  graph_ab->add_option("--graph", graph_files, "Graph files (two or more)")->required();
  graph_ab->add_option("--tasks", tasks_file, "Task set")->required();
  auto* graph_revise = graph_cmd->add_subcommand("revise", "One judge revision round with an A/B check");
  graph_revise->add_option("--graph", graph_files, "Graph file")->required()->expected(1);
  graph_revise->add_option("--tasks", tasks_file, "Task set")->required();
  graph_revise->add_option("--judge", judge, "Judge solver id")->required();

  // aggregate
  auto* agg_cmd = app.add_subcommand("aggregate", "Render a result matrix with coverage and curve");
  std::string matrix_file, run_dir, layout = "solvers_as_rows", ordering = "individual_desc";
  agg_cmd->add_option("--matrix", matrix_file, "Matrix table or JSON");
  agg_cmd->add_option("--run", run_dir, "Run directory");
  agg_cmd->add_option("--layout", layout, "solvers_as_rows or tasks_as_rows");
  agg_cmd->add_option("--curve", ordering, "individual_desc or greedy_marginal");
  agg_cmd->add_flag("--max-column", "Add the OR column (tasks_as_rows)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    // help on a subcommand
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    if (eval->parsed()) {
      const auto config = effective_config(g, true);
      const auto outcome = run_eval(config);
      RenderOptions ro;
      ro.layout = config.layout;
      out << render_matrix(outcome.matrix, ro) << summary_line(outcome.matrix) << "\n";
      out << "run: " << outcome.run_id << " (" << outcome.run_dir.string() << ")\n";
      return kExitOk;
    }

    if (arc_cmd->parsed()) {
      if (arc_verify_cmd->parsed()) return arc_verify(task_file, program_text(program, program_file), timeout_ms, out);
      if (arc_predict_cmd->parsed()) {
        return arc_predict(task_file, program_text(program, program_file), timeout_ms, unsafe, g.out, out);
      }
      if (arc_augment_cmd->parsed()) return arc_augment(task_file, g.out, out);
      if (arc_loo_cmd->parsed()) return arc_loo(task_file, g.out, out, err);
      if (arc_prompt_cmd->parsed()) {
        out << arc::format_prompt(read_arc_task(task_file), arc::prompt_style_from_string(style)) << "\n";
        return kExitOk;
      }
    }

    if (game_cmd->parsed()) {
      if (coin_cmd->parsed()) {
        const auto r = games::coinflip_solve(a, b);
        json moves = json::array();
        std::string text;
        for (const auto& mv : r.witness) {
          moves.push_back({{"row", mv.row}, {"col", mv.col}, {"top_right", mv.top_right}});
          text += (text.empty() ? "" : " ") + games::to_string(mv);
        }
        return print_game(out, std::string("solvable: ") + (r.solvable ? "true" : "false"),
                          r.solvable ? "witness: " + text : "",
                          {{"game", "coinflip"}, {"m", a}, {"n", b}, {"solvable", r.solvable}, {"witness", moves},
                           {"states_explored", r.states_explored}});
      }
      if (seq_cmd->parsed()) {
        const auto r = games::sequence_solve(a);
        return print_game(out, "L = " + std::to_string(r.length), "witness: " + join_ints(r.witness),
                          {{"game", "sequence"}, {"bound", a}, {"length", r.length}, {"witness", r.witness},
                           {"nodes", r.nodes}});
      }
      if (ninja_cmd->parsed()) {
        const auto r = games::ninja_solve(a);
        return print_game(out, "k = " + std::to_string(r.guarantee),
                          "worst coloring: " + join_ints(r.worst_coloring),
                          {{"game", "ninja"}, {"n", a}, {"k", r.guarantee}, {"worst_coloring", r.worst_coloring},
                           {"colorings", r.colorings}});
      }
      if (turbo_cmd->parsed()) {
        const auto r = games::turbo_solve(a, b);
        json probe = r.first_probe ? json{r.first_probe->first, r.first_probe->second} : json(nullptr);
        std::string detail = "placements: " + std::to_string(r.placements) +
                             ", knowledge states: " + std::to_string(r.knowledge_states);
        if (r.first_probe) {
          detail += ", first probe: (" + std::to_string(r.first_probe->first) + "," +
                    std::to_string(r.first_probe->second) + ")";
        }
        return print_game(out, r.reachable() ? "n = " + std::to_string(r.attempts) : "n = unreachable", detail,
                          {{"game", "turbo"}, {"rows", a}, {"cols", b},
                           {"attempts", r.reachable() ? json(r.attempts) : json(nullptr)},
                           {"placements", r.placements}, {"knowledge_states", r.knowledge_states},
                           {"first_probe", probe}});
      }
      const auto seed = g.seed.value_or(g.config.empty() ? 0 : load_config(g.config).seed);
      const auto game = games::make_game(game_name, parse_game_params(game_params));
      if (sim_cmd->parsed()) {
        const auto trajectories = games::simulate(*game, games::random_policy(), episodes, seed, max_steps);
        json all = json::array();
        for (std::size_t e = 0; e < trajectories.size(); ++e) {
          const auto& t = trajectories[e];
          out << "episode " << e << ": steps " << t.steps.size() << ", reward " << t.total_reward()
              << (t.terminal ? ", terminal" : t.truncated ? ", truncated" : "") << "\n";
          all.push_back(games::to_json(t));
        }
        const json record{{"game", game_name}, {"params", game->params()}, {"seed", seed}, {"trajectories", all}};
        if (!g.out.empty()) write_file(g.out, record.dump() + "\n");
        return kExitOk;
      }
      if (vi_cmd->parsed()) {
        Rng rng(derive_seed(seed, "init"));
        const auto table = games::value_iterate(*game, game->initial_state(rng), {gamma, tol});
        const auto t = games::greedy_rollout(*game, table, max_steps);
        std::vector<int> actions;
        for (const auto& s : t.steps) actions.push_back(s.action);
        out << "states: " << table.states.size() << ", iterations: " << table.iterations << "\n";
        out << "value: " << table.values[0] << "\n";
        out << "greedy: " << t.steps.size() << " steps, reward " << t.total_reward()
            << (t.terminal ? ", reaches a terminal state" : ", never terminates") << "\n";
        json record{{"game", game_name}, {"params", game->params()}, {"gamma", gamma}};
        record["states"] = table.states.size();
        record["iterations"] = table.iterations;
        record["value"] = table.values[0];
        record["greedy_actions"] = actions;
        record["greedy_terminal"] = t.terminal;
        out << "record: " << record.dump() << "\n";
        return kExitOk;
      }
    }

    if (graph_cmd->parsed()) {
      const auto config = effective_config(g, false);
      const auto solvers = make_solvers(config.solvers, config.base_dir);
      graph::ExecuteOptions opts;
      opts.solvers = &solvers;
      opts.seed = config.seed;
      opts.parallel = config.parallel;
      auto load = [](const std::string& file) {
        auto graph = graph::load_graph(file);
        if (graph.name.empty()) graph.name = fs::path(file).stem().string();
        return graph;
      };

      if (graph_run->parsed()) {
        const auto graph = load(graph_files.front());
        std::map<std::string, graph::Value> bound;
        if (!task_file.empty()) {
          auto v = read_json(task_file);
          if (v.is_object() && !v.contains("id")) v["id"] = fs::path(task_file).stem().string();
          bound["task"] = v;
        }
        for (const auto& kv : inputs) {
          const auto eq = kv.find('=');
          if (eq == std::string::npos) throw ConfigError("--input expects name=file");
          bound[kv.substr(0, eq)] = read_json(kv.substr(eq + 1));
        }
        const auto result = graph::execute(graph, bound, opts);
        json outputs = json::object();
        for (const auto& [k, v] : result.outputs) outputs[k] = v;
        const json record{{"graph", graph.name}, {"outputs", outputs}, {"missing", result.missing},
                          {"trace", graph::to_json(result.trace)}};
        for (const auto& e : result.trace.entries) {
          out << e.node << " (" << e.op << "): " << (e.error ? "failed: " + *e.error : e.output_digest.substr(0, 12))
              << "\n";
        }
        for (const auto& s : result.trace.skipped) out << s << ": skipped\n";
        for (const auto& [k, v] : result.outputs) out << "output " << k << ": " << v.dump() << "\n";
        if (!g.out.empty()) write_file(g.out, record.dump(2) + "\n");
        if (!result.ok()) return kExitVerifyFailed;
        const auto it = result.outputs.find("verdict");
        if (it != result.outputs.end() && !graph::solved(result)) return kExitVerifyFailed;
        return kExitOk;
      }
      if (graph_mutate->parsed()) {
        auto graph = load(graph_files.front());
        graph::validate(graph, graph::OpRegistry::builtin(), &solvers);
        for (const auto& line : mutations) {
          try {
            graph = graph::mutate(graph, graph::parse_mutation(line), graph::OpRegistry::builtin(), &solvers);
          } catch (const graph::GraphError& e) {
            throw VerificationFailed("mutation rejected: " + line + ": " + e.what());
          }
        }
        const auto text = graph::print_graph(graph);
        if (!g.out.empty()) write_file(g.out, text);
        else out << text;
        return kExitOk;
      }
      std::vector<graph::GraphTask> tasks;
      for (auto& [id, v] : load_task_values(json(fs::absolute(tasks_file).string()), {})) {
        tasks.push_back({id, v});
      }
      if (graph_ab->parsed()) {
        std::vector<graph::Variant> variants;
        for (const auto& f : graph_files) variants.push_back({load(f).name, load(f)});
        const auto matrix = graph::ab_test(variants, tasks, opts);
        out << render_matrix(matrix) << "\n";
        for (std::size_t s = 0; s < matrix.num_solvers(); ++s) {
          out << matrix.solver_ids()[s] << ": " << column_count(matrix, s) << "/" << matrix.num_tasks() << "\n";
        }
        if (!g.out.empty()) write_file(g.out, matrix_to_json(matrix).dump(2) + "\n");
        return kExitOk;
      }
      if (graph_revise->parsed()) {
        const auto graph = load(graph_files.front());
        const auto it = solvers.find(judge);
        if (it == solvers.end()) throw ConfigError("unknown judge solver '" + judge + "'");
        const auto decision = graph::revise_and_test(graph, tasks, *it->second, opts);
        out << graph::to_json(decision).dump(2) << "\n";
        if (!g.out.empty()) write_file(g.out, graph::print_graph(decision.graph));
        return kExitOk;
      }
    }

    if (agg_cmd->parsed()) {
      if (matrix_file.empty() == run_dir.empty()) throw ConfigError("give exactly one of --matrix or --run");
      ResultMatrix m = [&] {
        if (!matrix_file.empty()) return load_matrix_file(matrix_file);
        const fs::path dir = fs::absolute(run_dir);
        return matrix_from_record(RunStore(dir.parent_path()).load_run(dir.filename().string()));
      }();
      RenderOptions ro;
      if (layout == "tasks_as_rows") ro.layout = TableLayout::tasks_as_rows;
      else if (layout != "solvers_as_rows") throw ConfigError("unknown layout '" + layout + "'");
      ro.max_column = agg_cmd->count("--max-column") > 0;
      const auto table = render_matrix(m, ro);
      const auto csv = curve_to_csv(coverage_curve(m, curve_ordering_from_string(ordering)));
      out << table << summary_line(m) << "\n\n" << csv;
      if (!g.out.empty()) {
        write_file(fs::path(g.out) / "table.txt", table);
        write_file(fs::path(g.out) / "curve.csv", csv);
      }
      return kExitOk;
    }
    err << "error: no command\n";
    return kExitConfigError;
  } catch (const VerificationFailed& e) {
    err << e.what() << "\n";
    return kExitVerifyFailed;
  } catch (const graph::GraphSyntaxError& e) {
    err << "graph syntax error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const arc::DslSyntaxError& e) {
    err << "program syntax error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const graph::GraphError& e) {
    err << "invalid graph: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const games::GameBoundError& e) {
    err << "refused: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
}

}  // namespace ttc::cli
