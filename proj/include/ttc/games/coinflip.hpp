#pragma once

#include <array>

#include "ttc/games/game.hpp"

namespace ttc::games {

/// An m × n board of coins, all tails at the start. A move picks a 2×2 block with
/// top-left (row, col) and flips its top-left and bottom-right coins plus one of the
/// other two: top-right if `top_right`, else bottom-left.
struct CoinMove {
  int row = 0;
  int col = 0;
  bool top_right = true;
  friend bool operator==(const CoinMove&, const CoinMove&) = default;
};

inline constexpr int kCoinflipMaxCells = 20;

struct CoinflipResult {
  bool solvable = false;
  std::vector<CoinMove> witness;  // shortest move sequence to all heads
  std::size_t states_explored = 0;
};

/// BFS over all 2^(m·n) boards. Throws GameBoundError unless 2 <= m, n and m·n <= 20.
CoinflipResult coinflip_solve(int m, int n);
bool coinflip_solvable(int m, int n);

/// Board as row-major 0/1 cells, 1 = heads.
using CoinBoard = std::vector<int>;
void apply_move(CoinBoard& board, int n, const CoinMove& move);
std::vector<CoinMove> all_moves(int m, int n);

/// Heads on cells whose (row + col) mod 3 == label.
std::array<int, 3> label_counts(const CoinBoard& board, int n);

std::string to_string(const CoinMove& move);

/// State: the board. Action a encodes all_moves(m, n)[a]. Rewards: -1 per move,
/// +1000 for the move that turns every coin heads (terminal).
class CoinflipGame final : public Game {
 public:
  CoinflipGame(int m, int n);
  std::string name() const override { return "coinflip"; }
  nlohmann::json params() const override { return {{"m", m_}, {"n", n_}}; }
  State initial_state(Rng&) const override;
  std::vector<int> legal_actions(const State& s) const override;
  StepResult step(const State& s, int action) const override;
  bool terminal(const State& s) const override;
  std::string describe_action(const State& s, int action) const override;

  int action_of(const CoinMove& move) const;

 private:
  int m_, n_;
  std::vector<CoinMove> moves_;
};

}  // namespace ttc::games
