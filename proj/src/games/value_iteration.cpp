#include "ttc/games/value_iteration.hpp"

#include <cmath>
#include <deque>

namespace ttc::games {

std::size_t StateHash::operator()(const State& s) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ s.size();
  for (int x : s) h = splitmix64(h ^ static_cast<std::uint32_t>(x));
  return static_cast<std::size_t>(h);
}

std::size_t ValueTable::index_of(const State& s) const {
  const auto it = index.find(s);
  if (it == index.end()) throw std::out_of_range("state not reachable from the initial state");
  return it->second;
}

namespace {

struct Edge {
  int action;
  std::size_t to;
  double reward;
};

}  // namespace

ValueTable value_iterate(const Game& game, const State& initial, const ValueIterationOptions& opt) {
  if (!(opt.gamma >= 0.0 && opt.gamma <= 1.0)) throw GameBoundError("gamma must lie in [0, 1]");
  if (!(opt.tol > 0.0)) throw GameBoundError("tol must be positive");

  ValueTable table;
  std::vector<std::vector<Edge>> edges;
  std::vector<bool> is_terminal;
  auto intern = [&](const State& s) {
    const auto [it, fresh] = table.index.emplace(s, table.states.size());
    if (fresh) {
      if (table.states.size() >= opt.max_states) {
        throw GameBoundError("more than " + std::to_string(opt.max_states) + " reachable states");
      }
      table.states.push_back(s);
    }
    return it->second;
  };
  intern(initial);
  for (std::size_t i = 0; i < table.states.size(); ++i) {
    const State s = table.states[i];
    is_terminal.push_back(game.terminal(s));
    edges.emplace_back();
    if (is_terminal.back()) continue;
    for (int a : game.legal_actions(s)) {
      auto r = game.step(s, a);
      const auto to = intern(r.next);
      edges[i].push_back({a, to, r.reward});
    }
  }
  const std::size_t count = table.states.size();

  if (opt.gamma >= 1.0) {
    std::vector<std::vector<std::size_t>> preds(count);
    for (std::size_t i = 0; i < count; ++i)
      for (const auto& e : edges[i]) preds[e.to].push_back(i);
    std::vector<bool> reaches(count, false);
    std::deque<std::size_t> queue;
    for (std::size_t i = 0; i < count; ++i)
      if (is_terminal[i]) {
        reaches[i] = true;
        queue.push_back(i);
      }
    while (!queue.empty()) {
      const auto i = queue.front();
      queue.pop_front();
      for (auto p : preds[i])
        if (!reaches[p]) {
          reaches[p] = true;
          queue.push_back(p);
        }
    }
    for (std::size_t i = 0; i < count; ++i)
      if (!reaches[i]) throw GameBoundError("gamma = 1 needs every reachable state to reach a terminal state");
  }

  table.values.assign(count, 0.0);
  std::vector<double> next(count, 0.0);
  while (true) {
    if (table.iterations >= opt.max_iterations) {
      throw GameBoundError("value iteration did not converge within " + std::to_string(opt.max_iterations) +
                           " iterations");
    }
    ++table.iterations;
    double residual = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      if (is_terminal[i] || edges[i].empty()) {
        next[i] = 0.0;
        continue;
      }
      double best = -INFINITY;
      for (const auto& e : edges[i]) best = std::max(best, e.reward + opt.gamma * table.values[e.to]);
      next[i] = best;
      residual = std::max(residual, std::abs(best - table.values[i]));
    }
    table.values.swap(next);
    table.residual = residual;
    if (residual < opt.tol) break;
  }

  table.policy.assign(count, -1);
  for (std::size_t i = 0; i < count; ++i) {
    double best = -INFINITY;
    for (const auto& e : edges[i]) {
      const double q = e.reward + opt.gamma * table.values[e.to];
      if (q > best + 1e-12) {
        best = q;
        table.policy[i] = e.action;
      }
    }
  }
  return table;
}

Trajectory greedy_rollout(const Game& game, const ValueTable& table, int max_steps) {
  std::vector<int> actions;
  State s = table.states.at(0);
  for (int t = 0; t < max_steps && !game.terminal(s); ++t) {
    const int a = table.action(s);
    if (a < 0) break;
    actions.push_back(a);
    s = game.step(s, a).next;
  }
  return replay(game, table.states.at(0), actions, 0, max_steps);
}

}  // namespace ttc::games
