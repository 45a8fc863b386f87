#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ttc/cli/cli.hpp"
#include "ttc/cli/config.hpp"
#include "ttc/core/errors.hpp"

namespace fs = std::filesystem;
using namespace ttc;
using namespace ttc::cli;

namespace {

const fs::path kFixtures = TTC_FIXTURES;

struct Output {
  int code;
  std::string out, err;
};

Output invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("ttc_cli_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string read(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Cli, GameSolvers) {
  auto r = invoke({"game", "coinflip", "3", "3"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.rfind("solvable: true\nwitness: ", 0), 0u);
  EXPECT_NE(invoke({"game", "coinflip", "2", "2"}).out.find("solvable: false"), std::string::npos);
  EXPECT_EQ(invoke({"game", "sequence", "4"}).out.rfind("L = 7\n", 0), 0u);
  EXPECT_EQ(invoke({"game", "ninja", "8"}).out.rfind("k = 4\n", 0), 0u);
  EXPECT_EQ(invoke({"game", "turbo", "4", "3"}).out.rfind("n = 3\n", 0), 0u);
  EXPECT_EQ(invoke({"game", "turbo", "4", "2"}).out.rfind("n = unreachable", 0), 0u);
  EXPECT_EQ(invoke({"game", "turbo", "9", "9"}).code, kExitConfigError);
  EXPECT_EQ(invoke({"game", "coinflip", "1", "3"}).code, kExitConfigError);
}

TEST(Cli, GameSimulationAndValueIteration) {
  auto r = invoke({"--seed", "4", "game", "simulate", "chests", "--param", "n=3", "--episodes", "2"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out, invoke({"--seed", "4", "game", "simulate", "chests", "--param", "n=3", "--episodes", "2"}).out);
  auto vi = invoke({"game", "value-iterate", "sequence", "--param", "bound=3", "--param", "length=5", "--gamma", "1"});
  EXPECT_EQ(vi.code, kExitOk);
  EXPECT_NE(vi.out.find("\"value\":3"), std::string::npos) << vi.out;
  EXPECT_EQ(invoke({"game", "simulate", "chess"}).code, kExitConfigError);
  EXPECT_EQ(invoke({"game", "simulate", "ferry", "--param", "n"}).code, kExitConfigError);
}

TEST(Cli, ArcCommands) {
  const auto task = (kFixtures / "arc" / "mirror.json").string();
  EXPECT_EQ(invoke({"arc", "verify", "--task", task, "--program", "flip_h"}).code, kExitOk);
  const auto wrong = invoke({"arc", "verify", "--task", task, "--program", "flip_v"});
  EXPECT_EQ(wrong.code, kExitVerifyFailed);
  EXPECT_NE(wrong.out.find("verdict: fail"), std::string::npos);
  EXPECT_EQ(invoke({"arc", "verify", "--task", task, "--program", "flip_x"}).code, kExitConfigError);
  EXPECT_EQ(invoke({"arc", "predict", "--task", task, "--program", "flip_v"}).code, kExitVerifyFailed);
  EXPECT_EQ(invoke({"arc", "predict", "--task", task, "--program", "flip_v", "--unsafe"}).code, kExitOk);
  const auto crash = invoke({"arc", "verify", "--task", task, "--program", "!cmd sh -c 'exit 4'"});
  EXPECT_EQ(crash.code, kExitVerifyFailed);
  EXPECT_NE(crash.out.find("(crash)"), std::string::npos);
  const auto dir = scratch("augment");
  const auto aug = invoke({"--out", dir.string(), "arc", "augment", "--task", task});
  EXPECT_EQ(aug.code, kExitOk);
  EXPECT_TRUE(fs::exists(dir / "mirror.json"));
  EXPECT_NE(invoke({"arc", "prompt", "--task", task, "--style", "program"}).out.find("Write a program"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Cli, UsageAndConfigErrors) {
  EXPECT_EQ(invoke({}).code, kExitConfigError);
  EXPECT_EQ(invoke({"teleport"}).code, kExitConfigError);
  EXPECT_EQ(invoke({"eval"}).code, kExitConfigError);
  const auto dir = scratch("badcfg");
  std::ofstream(dir / "c.json") << R"({"solvers": [], "colour": 1})";
  const auto r = invoke({"--config", (dir / "c.json").string(), "eval"});
  EXPECT_EQ(r.code, kExitConfigError);
  EXPECT_NE(r.err.find("colour"), std::string::npos);
  std::ofstream(dir / "k.json") << R"({"solvers": [{"id": "m", "kind": "http-model",
    "params": {"base_url": "http://127.0.0.1:9", "model": "x", "api_key_env": "TTC_UNSET_KEY_FOR_TEST"}}],
    "tasks": [{"id": "t", "prompt": "p", "reference": "a"}]})";
  ::unsetenv("TTC_UNSET_KEY_FOR_TEST");
  const auto k = invoke({"--config", (dir / "k.json").string(), "--out", (dir / "runs").string(), "eval"});
  EXPECT_EQ(k.code, kExitConfigError);
  EXPECT_NE(k.err.find("TTC_UNSET_KEY_FOR_TEST"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir / "runs"));
  fs::remove_all(dir);
}

TEST(Config, FieldsAndSnapshot) {
  const auto c = load_config(kFixtures / "eval" / "config.json");
  EXPECT_EQ(c.solvers.size(), 2u);
  EXPECT_EQ(c.methods.size(), 3u);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.parallel, 4);
  EXPECT_FALSE(snapshot(c).contains("out"));
  EXPECT_EQ(load_tasks(c.tasks, c.base_dir).size(), 6u);
  EXPECT_EQ(column_id(c, "strong", "best_of_n"), "strong/best_of_n");
  EXPECT_THROW(config_from_json({{"methods", {"zero_shot", "zero_shot"}}}), ConfigError);
  EXPECT_THROW(config_from_json({{"parallel", 0}}), ConfigError);
  EXPECT_THROW(config_from_json({{"layout", "diagonal"}}), ConfigError);
  EXPECT_THROW(load_tasks(nlohmann::json::array({{{"id", "a"}, {"prompt", "p"}}, {{"id", "a"}, {"prompt", "q"}}}), {}),
               ConfigError);
  const auto arc = load_tasks((kFixtures / "arc").string(), {});
  EXPECT_EQ(arc.size(), 10u);
}

TEST(Eval, RecordsAreIndependentOfParallelism) {
  auto c = load_config(kFixtures / "eval" / "config.json");
  const auto dir = scratch("eval");
  c.out_dir = dir / "one";
  c.parallel = 1;
  const auto first = run_eval(c);
  c.out_dir = dir / "two";
  c.parallel = 8;
  const auto second = run_eval(c);
  EXPECT_EQ(first.run_id, second.run_id);
  for (const auto* f : {"record.jsonl", "config.json", "table.txt", "curve.csv", "matrix.json"}) {
    EXPECT_EQ(read(first.run_dir / f), read(second.run_dir / f)) << f;
  }
  EXPECT_EQ(first.matrix.num_solvers(), 6u);
  EXPECT_EQ(first.record.cells.size(), 36u);

  c.seed = 43;
  EXPECT_NE(run_eval(c).run_id, first.run_id);
  fs::remove_all(dir);
}

TEST(Eval, OlympiadReplayAndAggregate) {
  const auto dir = scratch("imo");
  const auto r = invoke({"--config", (kFixtures / "imo_replay" / "config.json").string(), "--out", dir.string(), "eval"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("coverage: 7/9 (77.78%)"), std::string::npos);
  const auto agg = invoke({"aggregate", "--matrix", (kFixtures / "imo_combinatorics.txt").string(), "--layout",
                           "tasks_as_rows", "--max-column", "--curve", "greedy_marginal"});
  EXPECT_EQ(agg.code, kExitOk);
  EXPECT_NE(agg.out.find("| task"), std::string::npos);
  EXPECT_NE(agg.out.find("max"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Graph, RunMutateAndRevise) {
  const auto cfg = (kFixtures / "graphs" / "config.json").string();
  const auto arc_graph = (kFixtures / "graphs" / "arc_pipeline.graph").string();
  const auto run_ok = invoke({"--config", cfg, "graph", "run", "--graph", arc_graph, "--task",
                              (kFixtures / "arc" / "mirror.json").string()});
  EXPECT_EQ(run_ok.code, kExitOk) << run_ok.err;
  EXPECT_NE(run_ok.out.find("output verdict"), std::string::npos);

  const auto mutated = invoke({"--config", cfg, "graph", "mutate", "--graph", arc_graph, "--mutation",
                               "edit_param prompt style=plain"});
  EXPECT_EQ(mutated.code, kExitOk);
  EXPECT_NE(mutated.out.find("node prompt format_prompt style=plain"), std::string::npos);
  EXPECT_EQ(invoke({"--config", cfg, "graph", "mutate", "--graph", arc_graph, "--mutation", "add_edge check.verdict prompt.task"}).code,
            kExitVerifyFailed);

  const auto revise = invoke({"--config", cfg, "graph", "revise", "--graph",
                              (kFixtures / "graphs" / "imo_pipeline.graph").string(), "--tasks",
                              (kFixtures / "graphs" / "tasks.json").string(), "--judge", "prover"});
  EXPECT_EQ(revise.code, kExitOk) << revise.err;
  EXPECT_NE(revise.out.find("\"kept\""), std::string::npos);

  const auto dir = scratch("badgraph");
  std::ofstream(dir / "g.graph") << "graph g\nnode a\n";
  EXPECT_EQ(invoke({"graph", "run", "--graph", (dir / "g.graph").string()}).code, kExitConfigError);
  fs::remove_all(dir);
}
