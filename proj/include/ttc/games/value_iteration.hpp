#pragma once

#include <unordered_map>

#include "ttc/games/game.hpp"

namespace ttc::games {

struct StateHash {
  std::size_t operator()(const State& s) const noexcept;
};

struct ValueIterationOptions {
  double gamma = 0.99;
  double tol = 1e-9;
  std::size_t max_states = 1'000'000;
  int max_iterations = 100'000;
};

/// State values and greedy policy over the states reachable from one initial state.
struct ValueTable {
  std::vector<State> states;  // BFS order; states[0] is the initial state
  std::vector<double> values;
  std::vector<int> policy;    // greedy action, -1 for terminal states
  int iterations = 0;
  double residual = 0.0;

  std::size_t index_of(const State& s) const;  // throws std::out_of_range if unseen
  double value(const State& s) const { return values[index_of(s)]; }
  int action(const State& s) const { return policy[index_of(s)]; }

  std::unordered_map<State, std::size_t, StateHash> index;
};

/// Bellman backups V(s) = max_a r(s, a) + gamma V(s') until the largest change is
/// below tol; terminal states have value 0. Ties in the greedy policy go to the
/// smallest action. Throws GameBoundError when more than max_states are reachable,
/// when gamma is 1 and some reachable state cannot reach a terminal state, or when
/// the backups have not converged within max_iterations.
ValueTable value_iterate(const Game& game, const State& initial, const ValueIterationOptions& options = {});

/// Plays the greedy policy from the table's initial state.
Trajectory greedy_rollout(const Game& game, const ValueTable& table, int max_steps = 1000);

}  // namespace ttc::games
