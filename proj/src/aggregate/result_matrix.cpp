#include "ttc/aggregate/result_matrix.hpp"

#include <set>
#include <stdexcept>

#include "ttc/core/errors.hpp"

namespace ttc {

namespace {

void check_ids(const std::vector<std::string>& ids, const char* what) {
  if (ids.empty()) throw ConfigError(std::string("result matrix needs at least one ") + what);
  std::set<std::string> seen;
  for (const auto& id : ids) {
    if (!seen.insert(id).second) throw ConfigError(std::string("duplicate ") + what + " id '" + id + "'");
  }
}

}  // namespace

ResultMatrix::ResultMatrix(std::vector<std::string> task_ids, std::vector<std::string> solver_ids)
    : task_ids_(std::move(task_ids)), solver_ids_(std::move(solver_ids)) {
  check_ids(task_ids_, "task");
  check_ids(solver_ids_, "solver");
  solved_.assign(task_ids_.size() * solver_ids_.size(), false);
  elapsed_.assign(solved_.size(), std::nullopt);
}

std::size_t ResultMatrix::index(std::size_t task, std::size_t solver) const {
  if (task >= task_ids_.size() || solver >= solver_ids_.size()) throw std::out_of_range("result matrix cell");
  return task * solver_ids_.size() + solver;
}

std::size_t ResultMatrix::task_index(const std::string& id) const {
  for (std::size_t i = 0; i < task_ids_.size(); ++i)
    if (task_ids_[i] == id) return i;
  throw std::out_of_range("unknown task '" + id + "'");
}

std::size_t ResultMatrix::solver_index(const std::string& id) const {
  for (std::size_t k = 0; k < solver_ids_.size(); ++k)
    if (solver_ids_[k] == id) return k;
  throw std::out_of_range("unknown solver '" + id + "'");
}

ResultMatrix ResultMatrix::select_solvers(const std::vector<std::size_t>& columns) const {
  std::vector<std::string> ids;
  for (auto k : columns) ids.push_back(solver_ids_.at(k));
  ResultMatrix out(task_ids_, ids);
  for (std::size_t i = 0; i < num_tasks(); ++i)
    for (std::size_t j = 0; j < columns.size(); ++j) {
      out.set_solved(i, j, solved(i, columns[j]));
      out.set_elapsed_ms(i, j, elapsed_ms(i, columns[j]));
    }
  return out;
}

void ResultMatrix::add_solver(const std::string& id, const std::vector<bool>& column) {
  if (column.size() != num_tasks()) throw ConfigError("column length differs from task count");
  for (const auto& s : solver_ids_)
    if (s == id) throw ConfigError("duplicate solver id '" + id + "'");
  const auto old_k = num_solvers();
  std::vector<bool> solved(num_tasks() * (old_k + 1));
  std::vector<std::optional<std::uint64_t>> elapsed(solved.size());
  for (std::size_t i = 0; i < num_tasks(); ++i) {
    for (std::size_t k = 0; k < old_k; ++k) {
      solved[i * (old_k + 1) + k] = solved_[i * old_k + k];
      elapsed[i * (old_k + 1) + k] = elapsed_[i * old_k + k];
    }
    solved[i * (old_k + 1) + old_k] = column[i];
  }
  solver_ids_.push_back(id);
  solved_ = std::move(solved);
  elapsed_ = std::move(elapsed);
}

std::vector<bool> or_aggregate(const ResultMatrix& m) {
  std::vector<bool> out(m.num_tasks(), false);
  for (std::size_t i = 0; i < m.num_tasks(); ++i)
    for (std::size_t k = 0; k < m.num_solvers() && !out[i]; ++k) out[i] = m.solved(i, k);
  return out;
}

std::size_t solved_count(const ResultMatrix& m) {
  std::size_t n = 0;
  for (bool b : or_aggregate(m)) n += b;
  return n;
}

double success_rate(const ResultMatrix& m) {
  return static_cast<double>(solved_count(m)) / static_cast<double>(m.num_tasks());
}

std::size_t column_count(const ResultMatrix& m, std::size_t solver) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < m.num_tasks(); ++i) n += m.solved(i, solver);
  return n;
}

}  // namespace ttc
