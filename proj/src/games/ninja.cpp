#include "ttc/games/ninja.hpp"

#include <algorithm>

namespace ttc::games {

int best_path_reds(const std::vector<int>& red) {
  std::vector<int> best{red.empty() ? 0 : (red[0] == 0 ? 1 : 0)};
  for (std::size_t i = 1; i < red.size(); ++i) {
    std::vector<int> next(i + 1, 0);
    for (std::size_t j = 0; j <= i; ++j) {
      int from = 0;
      if (j < i) from = best[j];
      if (j > 0) from = std::max(from, best[j - 1]);
      next[j] = from + (static_cast<std::size_t>(red[i]) == j ? 1 : 0);
    }
    best = std::move(next);
  }
  return best.empty() ? 0 : *std::max_element(best.begin(), best.end());
}

NinjaResult ninja_solve(int n) {
  if (n < 1 || n > kNinjaMaxRows) {
    throw GameBoundError("ninja enumeration is limited to 1 <= n <= " + std::to_string(kNinjaMaxRows));
  }
  NinjaResult out;
  out.guarantee = n + 1;
  std::vector<int> red(static_cast<std::size_t>(n), 0);
  // odometer over red[i] in 0..i, row 0 varying slowest
  while (true) {
    ++out.colorings;
    const int v = best_path_reds(red);
    if (v < out.guarantee) {
      out.guarantee = v;
      out.worst_coloring = red;
    }
    int i = n - 1;
    while (i >= 0 && red[static_cast<std::size_t>(i)] == i) red[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    ++red[static_cast<std::size_t>(i)];
  }
  return out;
}

int ninja_guarantee(int n) { return ninja_solve(n).guarantee; }

NinjaGame::NinjaGame(int n) : n_(n) {
  if (n < 1 || n > 64) throw GameBoundError("ninja game needs 1 <= n <= 64");
}

State NinjaGame::state_with_coloring(const std::vector<int>& red) const {
  if (static_cast<int>(red.size()) != n_) throw GameBoundError("one red position per row");
  for (std::size_t i = 0; i < red.size(); ++i)
    if (red[i] < 0 || red[i] > static_cast<int>(i)) throw GameBoundError("red position outside its row");
  State s{0, 0};
  s.insert(s.end(), red.begin(), red.end());
  return s;
}

State NinjaGame::initial_state(Rng& rng) const {
  std::vector<int> red(static_cast<std::size_t>(n_));
  for (std::size_t i = 0; i < red.size(); ++i) red[i] = static_cast<int>(uniform_below(rng, i + 1));
  return state_with_coloring(red);
}

std::vector<int> NinjaGame::legal_actions(const State& s) const {
  if (terminal(s)) return {};
  return {0, 1};
}

StepResult NinjaGame::step(const State& s, int action) const {
  StepResult out{s, 0.0, false};
  out.next[0] += 1;
  out.next[1] += action;
  if (out.next[static_cast<std::size_t>(2 + out.next[0])] == out.next[1]) out.reward = 1.0;
  out.terminal = terminal(out.next);
  return out;
}

std::string NinjaGame::describe_action(const State&, int action) const {
  return action == 0 ? "down-left" : "down-right";
}

}  // namespace ttc::games
