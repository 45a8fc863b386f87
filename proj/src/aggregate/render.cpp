#include "ttc/aggregate/render.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "ttc/core/errors.hpp"

namespace ttc {

using nlohmann::json;

namespace {

constexpr std::string_view kSolved = "✓";
constexpr std::string_view kUnsolved = "✗";
constexpr std::string_view kRefused = "●";

std::size_t display_width(const std::string& s) {
  std::size_t n = 0;
  for (unsigned char c : s) n += (c & 0xC0) != 0x80;
  return n;
}

std::string seconds_text(std::uint64_t ms) {
  std::string s = std::to_string(ms / 1000);
  if (const auto frac = ms % 1000) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "%03u", static_cast<unsigned>(frac));
    std::string f = buf;
    while (f.back() == '0') f.pop_back();
    s += "." + f;
  }
  return s;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_row(const std::string& line) {
  std::string body = trim(line);
  if (!body.empty() && body.front() == '|') body.erase(0, 1);
  if (!body.empty() && body.back() == '|') body.pop_back();
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const auto bar = body.find('|', start);
    cells.push_back(trim(body.substr(start, bar == std::string::npos ? std::string::npos : bar - start)));
    if (bar == std::string::npos) break;
    start = bar + 1;
  }
  return cells;
}

bool is_rule(const std::vector<std::string>& cells) {
  for (const auto& c : cells) {
    if (c.empty() || c.find_first_not_of("-:") != std::string::npos) return false;
  }
  return true;
}

struct Cell {
  bool solved = false;
  std::optional<std::uint64_t> ms;
};

std::optional<Cell> parse_cell(const std::string& text) {
  Cell c;
  std::string rest;
  if (text.rfind(kSolved, 0) == 0) {
    c.solved = true;
    rest = text.substr(kSolved.size());
  } else if (text.rfind(kUnsolved, 0) == 0) {
    rest = text.substr(kUnsolved.size());
  } else if (text.rfind(kRefused, 0) == 0) {
    rest = text.substr(kRefused.size());
  } else {
    return std::nullopt;
  }
  rest = trim(rest);
  if (rest.empty()) return c;
  if (rest.size() < 3 || rest.front() != '(' || rest.back() != ')') return std::nullopt;
  const auto num = rest.substr(1, rest.size() - 2);
  const auto dot = num.find('.');
  const auto whole = num.substr(0, dot);
  const auto frac = dot == std::string::npos ? std::string{} : num.substr(dot + 1);
  if (whole.empty() || whole.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
  if (frac.size() > 3 || frac.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
  if (dot != std::string::npos && frac.empty()) return std::nullopt;
  std::uint64_t ms = std::stoull(whole) * 1000;
  if (!frac.empty()) ms += std::stoull(frac + std::string(3 - frac.size(), '0'));
  c.ms = ms;
  return c;
}

}  // namespace

std::string format_cell(bool solved, std::optional<std::uint64_t> elapsed_ms) {
  std::string s(solved ? kSolved : kUnsolved);
  if (elapsed_ms) s += " (" + seconds_text(*elapsed_ms) + ")";
  return s;
}

std::string render_matrix(const ResultMatrix& m, const RenderOptions& options) {
  std::vector<std::vector<std::string>> rows;
  const bool by_task = options.layout == TableLayout::tasks_as_rows;
  if (by_task) {
    std::vector<std::string> header{"task"};
    if (options.max_column) header.push_back("max");
    for (const auto& s : m.solver_ids()) header.push_back(s);
    rows.push_back(std::move(header));
    const auto any = or_aggregate(m);
    for (std::size_t i = 0; i < m.num_tasks(); ++i) {
      std::vector<std::string> row{m.task_ids()[i]};
      if (options.max_column) row.push_back(format_cell(any[i], std::nullopt));
      for (std::size_t k = 0; k < m.num_solvers(); ++k) row.push_back(format_cell(m.solved(i, k), m.elapsed_ms(i, k)));
      rows.push_back(std::move(row));
    }
  } else {
    std::vector<std::string> header{"solver"};
    for (const auto& t : m.task_ids()) header.push_back(t);
    rows.push_back(std::move(header));
    for (std::size_t k = 0; k < m.num_solvers(); ++k) {
      std::vector<std::string> row{m.solver_ids()[k]};
      for (std::size_t i = 0; i < m.num_tasks(); ++i) row.push_back(format_cell(m.solved(i, k), m.elapsed_ms(i, k)));
      rows.push_back(std::move(row));
    }
  }
  std::vector<std::size_t> width(rows.front().size(), 3);
  for (const auto& r : rows)
    for (std::size_t j = 0; j < r.size(); ++j) width[j] = std::max(width[j], display_width(r[j]));
  auto emit = [&](const std::vector<std::string>& r) {
    std::string line = "|";
    for (std::size_t j = 0; j < r.size(); ++j) {
      line += " " + r[j] + std::string(width[j] - display_width(r[j]), ' ') + " |";
    }
    return line + "\n";
  };
  std::string out = emit(rows.front());
  out += "|";
  for (auto w : width) out += std::string(w + 2, '-') + "|";
  out += "\n";
  for (std::size_t r = 1; r < rows.size(); ++r) out += emit(rows[r]);
  return out;
}

ParsedTable parse_matrix_table(const std::string& text) {
  std::vector<std::string> header;
  std::size_t header_offset = 0;
  struct Row {
    std::vector<std::string> cells;
    std::size_t offset;
  };
  std::vector<Row> body;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(pos, end - pos);
    const std::size_t offset = pos;
    pos = end + 1;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto cells = split_row(t);
    if (header.empty()) {
      header = std::move(cells);
      header_offset = offset;
      continue;
    }
    if (is_rule(cells)) continue;
    body.push_back({std::move(cells), offset});
  }
  if (header.empty()) throw ParseError("empty matrix table", 0);
  TableLayout layout;
  if (header.front() == "solver") layout = TableLayout::solvers_as_rows;
  else if (header.front() == "task") layout = TableLayout::tasks_as_rows;
  else throw ParseError("table header must start with 'solver' or 'task'", header_offset);

  const bool has_max = layout == TableLayout::tasks_as_rows && header.size() > 1 && header[1] == "max";
  const std::size_t first_data = has_max ? 2 : 1;
  std::vector<std::string> col_ids(header.begin() + static_cast<long>(first_data), header.end());
  std::vector<std::string> row_ids;
  for (const auto& r : body) row_ids.push_back(r.cells.front());
  if (col_ids.empty() || row_ids.empty()) throw ParseError("matrix table has no cells", header_offset);

  std::optional<ResultMatrix> m;
  try {
    m = layout == TableLayout::tasks_as_rows ? ResultMatrix(row_ids, col_ids) : ResultMatrix(col_ids, row_ids);
  } catch (const ConfigError& e) {
    throw ParseError(e.what(), header_offset);
  }
  ParsedTable out{*m, layout, std::nullopt};
  if (has_max) out.max_column.emplace();
  for (std::size_t r = 0; r < body.size(); ++r) {
    const auto& row = body[r];
    if (row.cells.size() != header.size()) {
      throw ParseError("row '" + row.cells.front() + "' has " + std::to_string(row.cells.size()) +
                           " cells, header has " + std::to_string(header.size()),
                       row.offset);
    }
    if (has_max) {
      const auto c = parse_cell(row.cells[1]);
      if (!c) throw ParseError("unreadable cell '" + row.cells[1] + "'", row.offset);
      out.max_column->push_back(c->solved);
    }
    for (std::size_t j = first_data; j < row.cells.size(); ++j) {
      const auto c = parse_cell(row.cells[j]);
      if (!c) throw ParseError("unreadable cell '" + row.cells[j] + "'", row.offset);
      const auto col = j - first_data;
      const auto task = layout == TableLayout::tasks_as_rows ? r : col;
      const auto solver = layout == TableLayout::tasks_as_rows ? col : r;
      out.matrix.set_solved(task, solver, c->solved);
      out.matrix.set_elapsed_ms(task, solver, c->ms);
    }
  }
  return out;
}

json matrix_to_json(const ResultMatrix& m) {
  json cells = json::array();
  for (std::size_t i = 0; i < m.num_tasks(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.num_solvers(); ++k) {
      json c = {{"solved", m.solved(i, k)}};
      c["elapsed_ms"] = m.elapsed_ms(i, k) ? json(*m.elapsed_ms(i, k)) : json(nullptr);
      row.push_back(std::move(c));
    }
    cells.push_back(std::move(row));
  }
  return {{"tasks", m.task_ids()}, {"solvers", m.solver_ids()}, {"cells", std::move(cells)}};
}

ResultMatrix matrix_from_json(const json& j) {
  try {
    ResultMatrix m(j.at("tasks").get<std::vector<std::string>>(), j.at("solvers").get<std::vector<std::string>>());
    const auto& cells = j.at("cells");
    if (cells.size() != m.num_tasks()) throw ConfigError("matrix JSON: row count differs from task count");
    for (std::size_t i = 0; i < m.num_tasks(); ++i) {
      if (cells[i].size() != m.num_solvers()) throw ConfigError("matrix JSON: ragged row " + std::to_string(i));
      for (std::size_t k = 0; k < m.num_solvers(); ++k) {
        const auto& c = cells[i][k];
        m.set_solved(i, k, c.at("solved").get<bool>());
        if (c.contains("elapsed_ms") && !c["elapsed_ms"].is_null()) {
          m.set_elapsed_ms(i, k, c["elapsed_ms"].get<std::uint64_t>());
        }
      }
    }
    return m;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("matrix JSON: ") + e.what());
  }
}

ResultMatrix matrix_from_record(const RunRecord& record) {
  std::vector<std::string> tasks, solvers;
  for (const auto& c : record.cells) {
    if (std::find(tasks.begin(), tasks.end(), c.task_id) == tasks.end()) tasks.push_back(c.task_id);
    if (std::find(solvers.begin(), solvers.end(), c.solver_id) == solvers.end()) solvers.push_back(c.solver_id);
  }
  if (tasks.empty()) throw ConfigError("run record has no cells");
  ResultMatrix m(tasks, solvers);
  std::vector<bool> seen(tasks.size() * solvers.size(), false);
  for (const auto& c : record.cells) {
    const auto i = m.task_index(c.task_id);
    const auto k = m.solver_index(c.solver_id);
    if (seen[i * solvers.size() + k]) {
      throw ConfigError("run record has two cells for (" + c.task_id + ", " + c.solver_id + ")");
    }
    seen[i * solvers.size() + k] = true;
    m.set_solved(i, k, c.verdict.passed());
    m.set_elapsed_ms(i, k, c.candidate.elapsed_ms);
  }
  return m;
}

ResultMatrix load_matrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open matrix file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const auto j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("matrix file " + path + " is not valid JSON", first);
    return matrix_from_json(j);
  }
  return parse_matrix_table(text).matrix;
}

}  // namespace ttc
