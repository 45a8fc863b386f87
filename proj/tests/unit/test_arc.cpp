#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "ttc/arc/augment.hpp"
#include "ttc/arc/dsl.hpp"
#include "ttc/arc/external_program.hpp"
#include "ttc/arc/prompt.hpp"
#include "ttc/arc/task.hpp"
#include "ttc/arc/verify.hpp"
#include "ttc/core/seed.hpp"
#include "ttc/core/verify.hpp"

namespace fs = std::filesystem;
using namespace ttc;
using namespace ttc::arc;

namespace {

Grid random_grid(Rng& rng, int max_side = 6) {
  Grid g(1 + static_cast<int>(uniform_below(rng, max_side)), 1 + static_cast<int>(uniform_below(rng, max_side)));
  for (int r = 0; r < g.height(); ++r)
    for (int c = 0; c < g.width(); ++c) g.set(r, c, static_cast<std::uint8_t>(uniform_below(rng, 10)));
  return g;
}

ArcTask fixture(const std::string& id) {
  auto report = load_tasks(fs::path(TTC_FIXTURES) / "arc" / (id + ".json"));
  return report.tasks.at(0);
}

std::string fixture_program(const std::string& id) {
  std::ifstream in(fs::path(TTC_FIXTURES) / "arc_programs.json");
  return nlohmann::json::parse(in).at(id).get<std::string>();
}

}  // namespace

TEST(Grid, Invariants) {
  EXPECT_THROW(Grid(0, 3), GridError);
  EXPECT_THROW(Grid(31, 3), GridError);
  EXPECT_THROW(Grid(2, 2, 10), GridError);
  EXPECT_THROW(Grid::from_rows({{1, 2}, {3}}), GridError);
  EXPECT_THROW(Grid::from_text("1a"), GridError);
  const auto g = Grid::from_text("12\n34\n\n");
  EXPECT_EQ(g.height(), 2);
  EXPECT_EQ(g.to_text(), "12\n34");
  EXPECT_EQ(Grid::from_text("12|34"), g);
}

TEST(Grid, GeometryOnKnownGrid) {
  const auto g = Grid::from_text("123|456");
  EXPECT_EQ(rotate90(g).to_text(), "41\n52\n63");
  EXPECT_EQ(rotate180(g).to_text(), "654\n321");
  EXPECT_EQ(rotate270(g).to_text(), "36\n25\n14");
  EXPECT_EQ(flip_h(g).to_text(), "321\n654");
  EXPECT_EQ(flip_v(g).to_text(), "456\n123");
  EXPECT_EQ(transpose(g).to_text(), "14\n25\n36");
}

TEST(Dsl, ParsePrintRoundTrip) {
  const std::string src =
      "rotate90; flip_h\n# comment\nrecolor(3->1, 1->2); crop(0, 0, 2, 2)\n"
      "pad(5, 1, 0, 0, 1); translate(-1, 1, 0); tile(2, 3); overlay_nonzero(1); identity";
  const auto p = parse_dsl(src);
  EXPECT_EQ(p.size(), 9u);
  const auto printed = print_dsl(p);
  EXPECT_EQ(parse_dsl(printed), p);
  EXPECT_EQ(print_dsl(parse_dsl(printed)), printed);
  EXPECT_NE(printed.find("recolor(1->2, 3->1)"), std::string::npos);
}

TEST(Dsl, SyntaxErrorsCarryPosition) {
  try {
    parse_dsl("rotate90\nfrobnicate");
    FAIL();
  } catch (const DslSyntaxError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 1);
  }
  EXPECT_THROW(parse_dsl("recolor(1->12)"), DslSyntaxError);
  EXPECT_THROW(parse_dsl("crop(0, 0, 1)"), DslSyntaxError);
  std::string many;
  for (std::size_t i = 0; i <= DslProgram::kMaxOps; ++i) many += "identity;";
  EXPECT_THROW(parse_dsl(many), DslSyntaxError);
}

TEST(Dsl, EvaluationSemantics) {
  const auto g = Grid::from_text("10|02");
  EXPECT_EQ(eval_dsl(parse_dsl("recolor(1->3)"), g).to_text(), "30\n02");
  EXPECT_EQ(eval_dsl(parse_dsl("tile(1, 2)"), g).to_text(), "1010\n0202");
  EXPECT_EQ(eval_dsl(parse_dsl("pad(7, 1, 0, 0, 1)"), g).to_text(), "777\n107\n027");
  EXPECT_EQ(eval_dsl(parse_dsl("translate(0, 1, 9)"), g).to_text(), "91\n90");
  EXPECT_EQ(eval_dsl(parse_dsl("crop(1, 1, 1, 1)"), g).to_text(), "2");
  EXPECT_EQ(eval_dsl(parse_dsl("rotate180; overlay_nonzero(0)"), g).to_text(), "10\n02");
  EXPECT_EQ(eval_dsl(parse_dsl("rotate180; overlay_nonzero(0)"), Grid::from_text("10|00")).to_text(), "10\n01");
  EXPECT_THROW(eval_dsl(parse_dsl("crop(1, 1, 2, 2)"), g), DslEvalError);
  EXPECT_THROW(eval_dsl(parse_dsl("translate(5, 0, 0)"), g), DslEvalError);
  EXPECT_THROW(eval_dsl(parse_dsl("tile(30, 1)"), g), DslEvalError);
  EXPECT_THROW(parse_dsl("overlay_nonzero(3)"), DslSyntaxError);
}

TEST(Dihedral, GroupLaws) {
  const auto group = dihedral_group();
  EXPECT_EQ(group[0], Dihedral{});
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = random_grid(rng);
    for (const auto& a : group) {
      EXPECT_EQ(a.inverse().apply(a.apply(g)), g);
      EXPECT_EQ(eval_dsl(a.as_program(), g), a.apply(g)) << a.name();
      for (const auto& b : group) EXPECT_EQ((a * b).apply(g), a.apply(b.apply(g)));
    }
  }
  std::set<std::string> names;
  for (const auto& a : group) names.insert(a.name());
  EXPECT_EQ(names.size(), 8u);
}

TEST(Augment, ConjugationTransfersVerdicts) {
  const auto task = fixture("recolor_pairs");
  const auto program = parse_dsl(fixture_program("recolor_pairs"));
  for (const auto& g : dihedral_group()) {
    const auto moved = transform_task(task, g);
    EXPECT_EQ(verify_program(conjugate(program, g), task).passed(), true) << g.name();
    EXPECT_EQ(verify_program(program, moved).passed(), verify_program(conjugate(program, g), task).passed());
  }
}

TEST(Augment, DropsSymmetricDuplicates) {
  ArcTask sym{"sym", {{Grid::from_text("1"), Grid::from_text("2")}}, {{Grid::from_text("1"), std::nullopt}}};
  const auto variants = augment(sym);
  ASSERT_EQ(variants.size(), 1u);
  EXPECT_EQ(variants[0].id, "sym");
  const auto rot = augment(fixture("rotate_cw"));
  EXPECT_EQ(rot.size(), 8u);
  EXPECT_EQ(rot[0].id, "rotate_cw");
  EXPECT_EQ(rot[1].id, "rotate_cw_rot90");
}

TEST(Augment, LeaveOneOut) {
  const auto task = fixture("mirror");
  const auto folds = leave_one_out(task);
  ASSERT_EQ(folds.size(), task.train.size());
  for (std::size_t i = 0; i < folds.size(); ++i) {
    EXPECT_EQ(folds[i].held_out, task.train[i]);
    EXPECT_EQ(folds[i].task.train.size(), task.train.size() - 1);
    ASSERT_EQ(folds[i].task.test.size(), 1u);
    EXPECT_EQ(folds[i].task.test[0].input, task.train[i].input);
  }
  ArcTask single{"one", {task.train[0]}, {}};
  std::string warning;
  EXPECT_TRUE(leave_one_out(single, &warning).empty());
  EXPECT_FALSE(warning.empty());
}

TEST(Task, JsonRoundTripAndLoadFailures) {
  const auto task = fixture("tile_2x2");
  EXPECT_EQ(task_from_json(task.id, task_to_json(task)), task);
  const auto dir = fs::temp_directory_path() / ("ttc_arc_load_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  save_task(task, dir / "good.json");
  std::ofstream(dir / "bad.json") << R"({"train": [{"input": [[1, 2], [3]], "output": [[1]]}]})";
  const auto report = load_tasks(dir);
  ASSERT_EQ(report.tasks.size(), 1u);
  EXPECT_EQ(report.tasks[0].id, "good");
  ASSERT_EQ(report.failures.size(), 1u);
  EXPECT_EQ(report.failures[0].task_id, "bad");
  EXPECT_THROW(load_tasks(dir / "missing"), std::runtime_error);
  fs::remove_all(dir);
}

TEST(Verify, FixtureProgramsPassAndPerturbationsFail) {
  for (const auto& entry : fs::directory_iterator(fs::path(TTC_FIXTURES) / "arc")) {
    const auto id = entry.path().stem().string();
    auto task = fixture(id);
    const auto program = parse_dsl(fixture_program(id));
    EXPECT_TRUE(verify_program(program, task).passed()) << id;
    const auto predicted = predict(program, task);
    ASSERT_EQ(predicted.size(), task.test.size());
    EXPECT_EQ(predicted[0], *task.test[0].output) << id;
    auto broken = task;
    auto& out = broken.train.back().output;
    out.set(0, 0, static_cast<std::uint8_t>((out.at(0, 0) + 1) % 10));
    const auto v = verify_program(program, broken);
    EXPECT_EQ(v.status(), VerdictStatus::fail) << id;
    EXPECT_TRUE(v.checks().front().passed);
    EXPECT_FALSE(v.checks().back().passed);
    EXPECT_THROW(predict(program, broken), UnverifiedProgramError);
    EXPECT_NO_THROW(predict(program, broken, true));
  }
}

TEST(Verify, MismatchDescription) {
  EXPECT_EQ(describe_mismatch(Grid::from_text("12"), Grid::from_text("1|2")), "shape mismatch: expected 1x2, got 2x1");
  EXPECT_EQ(describe_mismatch(Grid::from_text("12"), Grid::from_text("13")), "cells differ at (0,1)");
}

TEST(ExternalProgram, WireFormat) {
  const auto g = Grid::from_text("12|34");
  EXPECT_EQ(encode_wire_grid(g), "12\n34\n\n");
  EXPECT_EQ(decode_wire_grid("12\n34\n\n"), g);
  EXPECT_THROW(decode_wire_grid(""), ExternalProgramError);
  EXPECT_THROW(decode_wire_grid("12\n3x\n"), ExternalProgramError);
  EXPECT_EQ(split_command_line(R"(sh -c 'echo "a b"' x)"),
            (std::vector<std::string>{"sh", "-c", "echo \"a b\"", "x"}));
}

TEST(ExternalProgram, RunsUnderTimeout) {
  const auto g = Grid::from_text("12|34");
  EXPECT_EQ(run_external({{"cat"}, std::chrono::seconds(5)}, g), g);
  auto cause = [&](ExternalProgram p) {
    try {
      run_external(p, g);
    } catch (const ExternalProgramError& e) {
      return e.cause_name();
    }
    return std::string("ok");
  };
  const auto start = std::chrono::steady_clock::now();
  EXPECT_EQ(cause({{"sh", "-c", "sleep 5"}, std::chrono::milliseconds(200)}), "timeout");
  EXPECT_LT(std::chrono::steady_clock::now() - start, std::chrono::seconds(3));
  EXPECT_EQ(cause({{"sh", "-c", "exit 3"}, std::chrono::seconds(5)}), "crash");
  EXPECT_EQ(cause({{"/nonexistent/program"}, std::chrono::seconds(5)}), "crash");
  EXPECT_EQ(cause({{"sh", "-c", "cat >/dev/null; echo hello"}, std::chrono::seconds(5)}), "malformed output");
}

TEST(Verify, ProgramVerifierOnCandidates) {
  const auto arc = fixture("mirror");
  const auto task = make_arc_task(arc);
  EXPECT_EQ(task.prompt, format_prompt(arc, PromptStyle::program));
  auto candidate = [](const std::string& text) {
    Candidate c;
    c.answer = AnswerValue::text(text);
    c.rationale = text;
    return c;
  };
  EXPECT_TRUE(verify(task, candidate("flip_h")).passed());
  EXPECT_EQ(verify(task, candidate("flip_v")).status(), VerdictStatus::fail);
  EXPECT_EQ(verify(task, candidate("!cmd sh -c 'exit 1'")).error_cause(), "crash");
  EXPECT_EQ(verify(task, candidate("not a program")).error_cause(), "malformed output");
}

TEST(Prompt, DeterministicAndStyled) {
  const auto task = fixture("frame");
  EXPECT_EQ(format_prompt(task), format_prompt(task));
  const auto plain = format_prompt(task, PromptStyle::plain);
  const auto program = format_prompt(task, prompt_style_from_string("program"));
  const auto shared = plain.find("\n\nTest\n");
  ASSERT_NE(shared, std::string::npos);
  EXPECT_EQ(program.compare(0, shared, plain, 0, shared), 0);
  EXPECT_NE(program, plain);
  EXPECT_NE(program.find("overlay_nonzero(slot)"), std::string::npos);
  EXPECT_THROW(prompt_style_from_string("verbose"), std::invalid_argument);
}
