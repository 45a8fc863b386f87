#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <numeric>

#include "ttc/aggregate/coverage.hpp"
#include "ttc/aggregate/render.hpp"
#include "ttc/aggregate/result_matrix.hpp"
#include "ttc/core/errors.hpp"
#include "ttc/core/seed.hpp"

namespace fs = std::filesystem;
using namespace ttc;

namespace {

ResultMatrix small() {
  ResultMatrix m({"t1", "t2", "t3", "t4"}, {"a", "b", "c"});
  // a: t1 t2 t3, b: t4, c: t1 t2
  for (auto [t, s] : std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {2, 0}, {3, 1}, {0, 2}, {1, 2}}) m.set_solved(t, s, true);
  return m;
}

std::string read(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(ResultMatrix, OrAggregation) {
  const auto m = small();
  EXPECT_EQ(or_aggregate(m), (std::vector<bool>{true, true, true, true}));
  EXPECT_EQ(solved_count(m), 4u);
  EXPECT_DOUBLE_EQ(success_rate(m), 1.0);
  EXPECT_EQ(column_count(m, 0), 3u);
  const auto sub = m.select_solvers({2});
  EXPECT_EQ(solved_count(sub), 2u);
  EXPECT_EQ(sub.solver_ids(), std::vector<std::string>{"c"});
  EXPECT_THROW(ResultMatrix({"t", "t"}, {"a"}), ConfigError);
  EXPECT_THROW(ResultMatrix({}, {"a"}), ConfigError);
  EXPECT_THROW(m.task_index("zz"), std::out_of_range);
}

TEST(ResultMatrix, OrIsMonotoneUnderAddedSolvers) {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    ResultMatrix m({"a", "b", "c", "d", "e"}, {"s0"});
    for (std::size_t t = 0; t < 5; ++t) m.set_solved(t, 0, uniform01(rng) < 0.3);
    std::size_t last = solved_count(m);
    for (int k = 1; k < 6; ++k) {
      std::vector<bool> col(5);
      for (auto&& c : col) c = uniform01(rng) < 0.3;
      m.add_solver("s" + std::to_string(k), col);
      EXPECT_GE(solved_count(m), last);
      last = solved_count(m);
    }
  }
}

TEST(Coverage, Orderings) {
  const auto m = small();
  const auto desc = coverage_curve(m, CurveOrdering::individual_desc);
  EXPECT_EQ(desc.solver_ids, (std::vector<std::string>{"a", "c", "b"}));
  EXPECT_EQ(desc.cum_solved, (std::vector<std::size_t>{3, 3, 4}));
  const auto greedy = coverage_curve(m, curve_ordering_from_string("greedy_marginal"));
  EXPECT_EQ(greedy.solver_ids, (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(greedy.cum_solved, (std::vector<std::size_t>{3, 4, 4}));
  EXPECT_DOUBLE_EQ(greedy.cum_fraction.back(), 1.0);
  EXPECT_EQ(curve_to_csv(greedy), "solver,cum_solved,cum_fraction\na,3,0.75\nb,4,1\nc,4,1\n");
  EXPECT_THROW(curve_ordering_from_string("random"), ConfigError);
}

TEST(Render, CellFormatting) {
  EXPECT_EQ(format_cell(true, std::nullopt), "✓");
  EXPECT_EQ(format_cell(true, 8000), "✓ (8)");
  EXPECT_EQ(format_cell(false, 250), "✗ (0.25)");
}

TEST(Render, RoundTripBothLayouts) {
  auto m = small();
  m.set_elapsed_ms(0, 0, 1500);
  for (auto layout : {TableLayout::solvers_as_rows, TableLayout::tasks_as_rows}) {
    const auto text = render_matrix(m, {layout, layout == TableLayout::tasks_as_rows});
    const auto parsed = parse_matrix_table(text);
    EXPECT_EQ(parsed.matrix, m);
    EXPECT_EQ(parsed.layout, layout);
    EXPECT_EQ(parsed.max_column.has_value(), layout == TableLayout::tasks_as_rows);
    EXPECT_EQ(render_matrix(parsed.matrix, {layout, layout == TableLayout::tasks_as_rows}), text);
  }
  EXPECT_EQ(matrix_from_json(matrix_to_json(m)), m);
}

TEST(Render, ParseErrorsCarryOffsets) {
  EXPECT_THROW(parse_matrix_table(""), ParseError);
  EXPECT_THROW(parse_matrix_table("| model | t1 |\n| a | ✓ |\n"), ParseError);
  const std::string text = "| solver | t1 | t2 |\n|---|---|---|\n| a | ✓ | ✗ |\n| b | ✓ |\n";
  try {
    parse_matrix_table(text);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), text.find("| b"));
  }
  EXPECT_THROW(parse_matrix_table("| solver | t1 |\n| a | maybe |\n"), ParseError);
}

TEST(Render, RefusedRunsCountAsUnsolved) {
  const auto parsed = parse_matrix_table("| task | a | b |\n| t1 | ● | ✓ (3) |\n");
  EXPECT_FALSE(parsed.matrix.solved(0, 0));
  EXPECT_TRUE(parsed.matrix.solved(0, 1));
  EXPECT_EQ(parsed.matrix.elapsed_ms(0, 1), 3000u);
}

TEST(Fixtures, EvaluationTableShapeAndTotals) {
  const auto parsed = parse_matrix_table(read(fs::path(TTC_FIXTURES) / "arc_eval400.txt"));
  const auto& m = parsed.matrix;
  ASSERT_EQ(m.num_tasks(), 400u);
  ASSERT_EQ(m.num_solvers(), 16u);
  ASSERT_TRUE(parsed.max_column);
  const auto published = static_cast<std::size_t>(std::count(parsed.max_column->begin(), parsed.max_column->end(), true));
  EXPECT_EQ(published, 375u);
  EXPECT_EQ(column_count(m, m.solver_index("o3low")), 331u);
  EXPECT_EQ(column_count(m, m.solver_index("BARC")), 212u);
  EXPECT_EQ(column_count(m, m.solver_index("MARC")), 190u);
}

TEST(Fixtures, OlympiadCoverage) {
  const auto m = load_matrix_file((fs::path(TTC_FIXTURES) / "imo_combinatorics.txt").string());
  ASSERT_EQ(m.num_tasks(), 9u);
  std::vector<std::size_t> methods(8);
  std::iota(methods.begin(), methods.end(), 0);
  EXPECT_EQ(solved_count(m.select_solvers(methods)), 7u);
  EXPECT_EQ(solved_count(m.select_solvers({m.solver_index("o1/zero_shot")})), 1u);
  std::size_t best = 0;
  for (auto k : methods) best = std::max(best, column_count(m, k));
  EXPECT_EQ(best, 3u);
}
