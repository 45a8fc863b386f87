#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ttc/aggregate/result_matrix.hpp"
#include "ttc/core/run_store.hpp"

namespace ttc {

enum class TableLayout { solvers_as_rows, tasks_as_rows };

struct RenderOptions {
  TableLayout layout = TableLayout::solvers_as_rows;
  /// tasks_as_rows only: a "max" column holding the OR over solvers.
  bool max_column = false;
};

/// Cell text: "✓" / "✗", followed by " (<seconds>)" when timed. Seconds print
/// without trailing zeros, e.g. "✓ (8)", "✗ (0.25)".
std::string format_cell(bool solved, std::optional<std::uint64_t> elapsed_ms);

/// Pipe-separated table. The header's first cell is "solver" or "task" and names
/// the layout. Lines starting with '#' are comments.
std::string render_matrix(const ResultMatrix& m, const RenderOptions& options = {});

struct ParsedTable {
  ResultMatrix matrix;
  TableLayout layout = TableLayout::solvers_as_rows;
  std::optional<std::vector<bool>> max_column;  // as written in the file
};

/// Inverse of render_matrix. Also reads "●" (refused run) as unsolved.
/// Throws ParseError with the byte offset of the offending line.
ParsedTable parse_matrix_table(const std::string& text);

nlohmann::json matrix_to_json(const ResultMatrix& m);
ResultMatrix matrix_from_json(const nlohmann::json& j);

/// One row per task (first-appearance order), one column per solver id; a cell is
/// solved iff its verdict passed. Throws ConfigError on duplicate cells.
ResultMatrix matrix_from_record(const RunRecord& record);

/// Reads a matrix from a table text file or a JSON file (by content).
ResultMatrix load_matrix_file(const std::string& path);

}  // namespace ttc
