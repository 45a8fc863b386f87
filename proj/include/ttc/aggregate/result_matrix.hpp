#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ttc {

/// Tasks × solvers success matrix with optional per-cell timings.
class ResultMatrix {
 public:
  /// All cells unsolved and untimed. Throws ConfigError on empty or duplicate ids.
  ResultMatrix(std::vector<std::string> task_ids, std::vector<std::string> solver_ids);

  std::size_t num_tasks() const { return task_ids_.size(); }
  std::size_t num_solvers() const { return solver_ids_.size(); }
  const std::vector<std::string>& task_ids() const { return task_ids_; }
  const std::vector<std::string>& solver_ids() const { return solver_ids_; }

  bool solved(std::size_t task, std::size_t solver) const { return solved_[index(task, solver)]; }
  void set_solved(std::size_t task, std::size_t solver, bool value) { solved_[index(task, solver)] = value; }
  std::optional<std::uint64_t> elapsed_ms(std::size_t task, std::size_t solver) const {
    return elapsed_[index(task, solver)];
  }
  void set_elapsed_ms(std::size_t task, std::size_t solver, std::optional<std::uint64_t> ms) {
    elapsed_[index(task, solver)] = ms;
  }

  /// Throws std::out_of_range for unknown ids.
  std::size_t task_index(const std::string& id) const;
  std::size_t solver_index(const std::string& id) const;

  /// Sub-matrix with the given solver columns, in the given order.
  ResultMatrix select_solvers(const std::vector<std::size_t>& columns) const;
  /// Appends a column; `solved` must have one entry per task.
  void add_solver(const std::string& id, const std::vector<bool>& solved);

  friend bool operator==(const ResultMatrix&, const ResultMatrix&) = default;

 private:
  std::size_t index(std::size_t task, std::size_t solver) const;

  std::vector<std::string> task_ids_;
  std::vector<std::string> solver_ids_;
  std::vector<bool> solved_;  // row-major
  std::vector<std::optional<std::uint64_t>> elapsed_;
};

/// bit_i = OR over solvers of solved[i][k].
std::vector<bool> or_aggregate(const ResultMatrix& m);
/// Number of tasks solved by at least one solver.
std::size_t solved_count(const ResultMatrix& m);
/// solved_count / num_tasks.
double success_rate(const ResultMatrix& m);
/// Tasks solved by one solver column.
std::size_t column_count(const ResultMatrix& m, std::size_t solver);

}  // namespace ttc
