#include "ttc/core/run_store.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include "ttc/core/errors.hpp"
#include "ttc/core/json_io.hpp"

namespace ttc {

namespace fs = std::filesystem;

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string serialize_cell(const RunCell& cell) {
  json j{{"task_id", cell.task_id},
         {"solver_id", cell.solver_id},
         {"candidate", to_json(cell.candidate)},
         {"verdict", to_json(cell.verdict)},
         {"trace", cell.trace}};
  return j.dump();
}

RunCell parse_cell(const std::string& line, std::size_t line_offset) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("corrupt record: ") + e.what(), line_offset + (e.byte ? e.byte - 1 : 0));
  }
  try {
    RunCell cell;
    cell.task_id = j.at("task_id").get<std::string>();
    cell.solver_id = j.at("solver_id").get<std::string>();
    cell.candidate = candidate_from_json(j.at("candidate"));
    cell.verdict = verdict_from_json(j.at("verdict"));
    cell.trace = j.at("trace");
    return cell;
  } catch (const std::exception& e) {
    throw ParseError(std::string("invalid record cell: ") + e.what(), line_offset);
  }
}

RunStore::RunStore(fs::path root) : root_(std::move(root)) {}

namespace {

void write_file(const fs::path& path, const std::string& content) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("storage unavailable: cannot write " + tmp);
    out << content;
    if (!out) throw std::runtime_error("storage unavailable: write failed for " + tmp);
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("storage unavailable: cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string RunStore::record_run(const RunRecord& record) {
  if (record.run_id.empty()) throw ConfigError("run record has no run_id");
  std::lock_guard lock(mutex_);
  std::error_code ec;
  fs::create_directories(root_, ec);
  if (ec) throw std::runtime_error("storage unavailable: " + ec.message());

  std::string run_id = record.run_id;
  for (int suffix = 2; fs::exists(root_ / run_id); ++suffix) {
    run_id = record.run_id + "-" + std::to_string(suffix);
  }
  const auto dir = root_ / run_id;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("storage unavailable: " + ec.message());

  std::string lines;
  for (const auto& cell : record.cells) {
    lines += serialize_cell(cell);
    lines += '\n';
  }
  write_file(dir / "record.jsonl", lines);
  write_file(dir / "config.json", record.config.dump(2) + "\n");
  const json meta{{"run_id", run_id},
                  {"cells", record.cells.size()},
                  {"started_at", record.started_at},
                  {"finished_at", record.finished_at}};
  write_file(dir / "meta.json", meta.dump(2) + "\n");
  return run_id;
}

RunRecord RunStore::load_run(const std::string& run_id) const {
  const auto dir = root_ / run_id;
  RunRecord record;
  record.run_id = run_id;

  const auto meta_text = read_file(dir / "meta.json");
  json meta;
  try {
    meta = json::parse(meta_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("corrupt meta.json: ") + e.what(), e.byte);
  }
  record.started_at = meta.value("started_at", "");
  record.finished_at = meta.value("finished_at", "");
  const auto expected_cells = meta.value("cells", std::size_t{0});

  const auto config_text = read_file(dir / "config.json");
  try {
    record.config = json::parse(config_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("corrupt config.json: ") + e.what(), e.byte);
  }

  const auto body = read_file(dir / "record.jsonl");
  std::size_t pos = 0;
  while (pos < body.size()) {
    const auto nl = body.find('\n', pos);
    if (nl == std::string::npos) {
      throw ParseError("truncated record: final line has no terminator", body.size());
    }
    record.cells.push_back(parse_cell(body.substr(pos, nl - pos), pos));
    pos = nl + 1;
  }
  if (record.cells.size() != expected_cells) {
    throw ParseError("truncated record: expected " + std::to_string(expected_cells) +
                         " cells, found " + std::to_string(record.cells.size()),
                     body.size());
  }
  return record;
}

}  // namespace ttc
