#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ttc/aggregate/result_matrix.hpp"

namespace ttc {

enum class CurveOrdering { individual_desc, greedy_marginal };

/// "individual_desc" or "greedy_marginal"; ConfigError otherwise.
CurveOrdering curve_ordering_from_string(std::string_view name);

struct CoverageCurve {
  std::vector<std::string> solver_ids;   // order in which solvers are added
  std::vector<std::size_t> cum_solved;   // OR coverage after each addition
  std::vector<double> cum_fraction;
};

/// individual_desc: solvers by own coverage, descending (ties by id).
/// greedy_marginal: at each step the solver adding most newly solved tasks
/// (ties by own coverage, then id).
CoverageCurve coverage_curve(const ResultMatrix& m, CurveOrdering ordering = CurveOrdering::individual_desc);

/// CSV with header "solver,cum_solved,cum_fraction".
std::string curve_to_csv(const CoverageCurve& curve);

}  // namespace ttc
