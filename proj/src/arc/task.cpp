#include "ttc/arc/task.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace ttc::arc {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

Grid grid_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument(where + ": grid must be a non-empty array");
  std::vector<std::vector<int>> rows;
  for (const auto& row : j) {
    if (!row.is_array()) throw std::invalid_argument(where + ": grid row is not an array");
    std::vector<int> r;
    for (const auto& cell : row) {
      if (!cell.is_number_integer()) throw std::invalid_argument(where + ": non-integer cell");
      r.push_back(cell.get<int>());
    }
    rows.push_back(std::move(r));
  }
  try {
    return Grid::from_rows(rows);
  } catch (const GridError& e) {
    throw std::invalid_argument(where + ": " + e.what());
  }
}

}  // namespace

ArcTask task_from_json(const std::string& id, const json& j) {
  ArcTask task;
  task.id = id;
  if (!j.is_object() || !j.contains("train")) throw std::invalid_argument("missing \"train\" array");
  const auto& train = j.at("train");
  if (!train.is_array() || train.empty()) throw std::invalid_argument("\"train\" must be a non-empty array");
  for (std::size_t i = 0; i < train.size(); ++i) {
    const auto where = "train[" + std::to_string(i) + "]";
    if (!train[i].contains("input") || !train[i].contains("output")) {
      throw std::invalid_argument(where + ": needs input and output");
    }
    task.train.push_back({grid_from_json(train[i].at("input"), where + ".input"),
                          grid_from_json(train[i].at("output"), where + ".output")});
  }
  if (j.contains("test")) {
    const auto& test = j.at("test");
    if (!test.is_array()) throw std::invalid_argument("\"test\" must be an array");
    for (std::size_t i = 0; i < test.size(); ++i) {
      const auto where = "test[" + std::to_string(i) + "]";
      TestPair pair{grid_from_json(test[i].at("input"), where + ".input"), std::nullopt};
      if (test[i].contains("output") && !test[i].at("output").is_null()) {
        pair.output = grid_from_json(test[i].at("output"), where + ".output");
      }
      task.test.push_back(std::move(pair));
    }
  }
  return task;
}

json task_to_json(const ArcTask& task) {
  json train = json::array();
  for (const auto& p : task.train) train.push_back({{"input", p.input.rows()}, {"output", p.output.rows()}});
  json test = json::array();
  for (const auto& p : task.test) {
    json t{{"input", p.input.rows()}};
    if (p.output) t["output"] = p.output->rows();
    test.push_back(std::move(t));
  }
  return {{"train", std::move(train)}, {"test", std::move(test)}};
}

LoadReport load_tasks(const fs::path& path) {
  if (!fs::exists(path)) throw std::runtime_error("no such file or directory: " + path.string());
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(path);
  }
  LoadReport report;
  for (const auto& file : files) {
    const auto id = file.stem().string();
    try {
      std::ifstream in(file);
      if (!in) throw std::runtime_error("cannot open file");
      report.tasks.push_back(task_from_json(id, json::parse(in)));
    } catch (const std::exception& e) {
      report.failures.push_back({id, e.what()});
    }
  }
  return report;
}

void save_task(const ArcTask& task, const fs::path& file) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << task_to_json(task).dump() << '\n';
}

}  // namespace ttc::arc
