#pragma once

#include <limits>
#include <optional>
#include <utility>

#include "ttc/games/game.hpp"

namespace ttc::games {

/// Turbo the snail: a rows × cols board with one hidden monster in every row
/// except the first and last, at most one per column. Each attempt starts in the
/// first row; touching a monster ends the attempt and reveals it.
struct TurboBounds {
  static constexpr int kMinRows = 3;
  static constexpr int kMaxRows = 5;
  static constexpr int kMinCols = 2;
  static constexpr int kMaxCols = 4;
};

/// Value reported when no strategy can ever reach the last row (every column blocked).
inline constexpr int kTurboNever = std::numeric_limits<int>::max();

struct TurboResult {
  int attempts = 0;                  // guaranteed number of attempts, or kTurboNever
  std::size_t placements = 0;        // consistent monster placements at the start
  std::size_t knowledge_states = 0;  // memoized belief states explored
  std::optional<std::pair<int, int>> first_probe;  // (row, col), 0-indexed; unset if none needed

  bool reachable() const { return attempts != kTurboNever; }
};

/// Minimal number of attempts that an adaptive strategy needs to reach the last row
/// against every monster placement. Exact AND-OR search over sets of consistent
/// placements: Turbo walks freely through provably safe cells and probes an
/// undetermined cell next to them; the adversary picks the answer.
/// Throws GameBoundError outside rows 3..5, cols 2..4 or when cols < rows - 2.
TurboResult turbo_solve(int rows, int cols);
int turbo_min_attempts(int rows, int cols);

/// Walk-level game for simulation. State layout:
///   [row, col, attempts_used, monster_col[1..rows-2]..., revealed[1..rows-2]...]
/// Actions: 0 up, 1 down, 2 left, 3 right. Rewards: -0.01 per move, -1 on a
/// monster (attempt used, monster revealed, restart in row 0 of that column),
/// +30 / +20 / +10 for reaching the last row on attempt 1 / 2 / 3 (0 later).
/// Terminal on reaching the last row or when max_attempts are used up.
class TurboGame final : public Game {
 public:
  TurboGame(int rows, int cols, int max_attempts = 3);
  std::string name() const override { return "turbo"; }
  nlohmann::json params() const override;
  State initial_state(Rng& rng) const override;
  std::vector<int> legal_actions(const State& s) const override;
  StepResult step(const State& s, int action) const override;
  bool terminal(const State& s) const override;
  std::string describe_action(const State& s, int action) const override;

  /// Fixed placement, e.g. for replays: monster_cols[k] is the column in row k+1.
  State state_with_monsters(const std::vector<int>& monster_cols) const;

 private:
  int rows_, cols_, max_attempts_;
};

}  // namespace ttc::games
