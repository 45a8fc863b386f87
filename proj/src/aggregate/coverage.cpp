#include "ttc/aggregate/coverage.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "ttc/core/errors.hpp"

namespace ttc {

CurveOrdering curve_ordering_from_string(std::string_view name) {
  if (name == "individual_desc") return CurveOrdering::individual_desc;
  if (name == "greedy_marginal") return CurveOrdering::greedy_marginal;
  throw ConfigError("unknown curve ordering '" + std::string(name) + "'");
}

CoverageCurve coverage_curve(const ResultMatrix& m, CurveOrdering ordering) {
  const auto k = m.num_solvers();
  std::vector<std::size_t> own(k);
  for (std::size_t s = 0; s < k; ++s) own[s] = column_count(m, s);
  auto better = [&](std::size_t a, std::size_t b) {
    if (own[a] != own[b]) return own[a] > own[b];
    return m.solver_ids()[a] < m.solver_ids()[b];
  };

  std::vector<std::size_t> order;
  if (ordering == CurveOrdering::individual_desc) {
    order.resize(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), better);
  } else {
    std::vector<bool> covered(m.num_tasks(), false), used(k, false);
    for (std::size_t step = 0; step < k; ++step) {
      std::size_t pick = k, pick_gain = 0;
      for (std::size_t s = 0; s < k; ++s) {
        if (used[s]) continue;
        std::size_t gain = 0;
        for (std::size_t i = 0; i < m.num_tasks(); ++i) gain += !covered[i] && m.solved(i, s);
        if (pick == k || gain > pick_gain || (gain == pick_gain && better(s, pick))) {
          pick = s;
          pick_gain = gain;
        }
      }
      used[pick] = true;
      for (std::size_t i = 0; i < m.num_tasks(); ++i) covered[i] = covered[i] || m.solved(i, pick);
      order.push_back(pick);
    }
  }

  CoverageCurve curve;
  std::vector<bool> covered(m.num_tasks(), false);
  std::size_t count = 0;
  for (auto s : order) {
    for (std::size_t i = 0; i < m.num_tasks(); ++i) {
      if (!covered[i] && m.solved(i, s)) {
        covered[i] = true;
        ++count;
      }
    }
    curve.solver_ids.push_back(m.solver_ids()[s]);
    curve.cum_solved.push_back(count);
    curve.cum_fraction.push_back(static_cast<double>(count) / static_cast<double>(m.num_tasks()));
  }
  return curve;
}

std::string curve_to_csv(const CoverageCurve& curve) {
  std::string out = "solver,cum_solved,cum_fraction\n";
  for (std::size_t i = 0; i < curve.solver_ids.size(); ++i) {
    char frac[32];
    std::snprintf(frac, sizeof frac, "%.6g", curve.cum_fraction[i]);
    out += curve.solver_ids[i] + "," + std::to_string(curve.cum_solved[i]) + "," + frac + "\n";
  }
  return out;
}

}  // namespace ttc
