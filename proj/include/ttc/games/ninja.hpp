#pragma once

#include "ttc/games/game.hpp"

namespace ttc::games {

inline constexpr int kNinjaMaxRows = 8;

/// A triangle with rows 1..n of 1..n circles and exactly one red circle per row.
/// A path starts at the top and steps to one of the two circles directly below.
struct NinjaResult {
  int guarantee = 0;                // min over colorings of the best path's red count
  std::vector<int> worst_coloring;  // red position per row for a minimizing coloring
  std::uint64_t colorings = 0;
};

/// Exhaustive over all n! colorings. Throws GameBoundError unless 1 <= n <= 8.
NinjaResult ninja_solve(int n);
int ninja_guarantee(int n);

/// Most red circles on any top-to-bottom path; red[i] is the red position in row i.
int best_path_reds(const std::vector<int>& red);

/// State: [row, col, red[0..n-1]...]. Action 0 steps down-left, 1 down-right.
/// Reward +1 for each red circle landed on (the starting circle earns nothing).
class NinjaGame final : public Game {
 public:
  explicit NinjaGame(int n);
  std::string name() const override { return "ninja"; }
  nlohmann::json params() const override { return {{"n", n_}}; }
  State initial_state(Rng& rng) const override;
  std::vector<int> legal_actions(const State& s) const override;
  StepResult step(const State& s, int action) const override;
  bool terminal(const State& s) const override { return s.at(0) >= n_ - 1; }
  std::string describe_action(const State& s, int action) const override;

  State state_with_coloring(const std::vector<int>& red) const;

 private:
  int n_;
};

}  // namespace ttc::games
