#include "ttc/games/coinflip.hpp"

#include <algorithm>
#include <deque>

namespace ttc::games {

namespace {

void check_bounds(int m, int n) {
  if (m < 2 || n < 2) throw GameBoundError("coinflip needs m, n >= 2");
  if (m * n > kCoinflipMaxCells) {
    throw GameBoundError("coinflip BFS is limited to m*n <= " + std::to_string(kCoinflipMaxCells) + " (got " +
                         std::to_string(m * n) + ")");
  }
}

std::uint32_t move_mask(int n, const CoinMove& mv) {
  auto bit = [n](int r, int c) { return std::uint32_t{1} << (r * n + c); };
  std::uint32_t mask = bit(mv.row, mv.col) | bit(mv.row + 1, mv.col + 1);
  mask |= mv.top_right ? bit(mv.row, mv.col + 1) : bit(mv.row + 1, mv.col);
  return mask;
}

}  // namespace

std::vector<CoinMove> all_moves(int m, int n) {
  std::vector<CoinMove> out;
  for (int r = 0; r + 1 < m; ++r)
    for (int c = 0; c + 1 < n; ++c) {
      out.push_back({r, c, true});
      out.push_back({r, c, false});
    }
  return out;
}

CoinflipResult coinflip_solve(int m, int n) {
  check_bounds(m, n);
  const auto moves = all_moves(m, n);
  std::vector<std::uint32_t> masks;
  for (const auto& mv : moves) masks.push_back(move_mask(n, mv));

  const std::uint32_t cells = static_cast<std::uint32_t>(m * n);
  const std::uint32_t goal = cells == 32 ? ~0u : (1u << cells) - 1;
  constexpr std::int32_t kUnseen = -1;
  // parent move index per state; -2 marks the start
  std::vector<std::int32_t> via(std::size_t{1} << cells, kUnseen);
  via[0] = -2;
  std::deque<std::uint32_t> queue{0};
  CoinflipResult out;
  while (!queue.empty()) {
    const auto s = queue.front();
    queue.pop_front();
    ++out.states_explored;
    if (s == goal) break;
    for (std::size_t i = 0; i < masks.size(); ++i) {
      const auto t = s ^ masks[i];
      if (via[t] != kUnseen) continue;
      via[t] = static_cast<std::int32_t>(i);
      queue.push_back(t);
    }
  }
  if (via[goal] == kUnseen) return out;
  out.solvable = true;
  for (auto s = goal; s != 0;) {
    const auto i = static_cast<std::size_t>(via[s]);
    out.witness.push_back(moves[i]);
    s ^= masks[i];
  }
  std::reverse(out.witness.begin(), out.witness.end());
  return out;
}

bool coinflip_solvable(int m, int n) { return coinflip_solve(m, n).solvable; }

void apply_move(CoinBoard& board, int n, const CoinMove& mv) {
  auto flip = [&](int r, int c) {
    auto& x = board.at(static_cast<std::size_t>(r * n + c));
    x ^= 1;
  };
  flip(mv.row, mv.col);
  flip(mv.row + 1, mv.col + 1);
  if (mv.top_right) flip(mv.row, mv.col + 1);
  else flip(mv.row + 1, mv.col);
}

std::array<int, 3> label_counts(const CoinBoard& board, int n) {
  std::array<int, 3> t{};
  for (std::size_t i = 0; i < board.size(); ++i) {
    const int r = static_cast<int>(i) / n, c = static_cast<int>(i) % n;
    t[static_cast<std::size_t>((r + c) % 3)] += board[i];
  }
  return t;
}

std::string to_string(const CoinMove& mv) {
  return "(" + std::to_string(mv.row) + "," + std::to_string(mv.col) + ")" + (mv.top_right ? "+TR" : "+BL");
}

CoinflipGame::CoinflipGame(int m, int n) : m_(m), n_(n), moves_(all_moves(m, n)) {
  if (m < 2 || n < 2 || m * n > 30 * 30) throw GameBoundError("coinflip game needs 2 <= m, n and m*n <= 900");
}

State CoinflipGame::initial_state(Rng&) const { return State(static_cast<std::size_t>(m_ * n_), 0); }

std::vector<int> CoinflipGame::legal_actions(const State& s) const {
  if (terminal(s)) return {};
  std::vector<int> out(moves_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<int>(i);
  return out;
}

StepResult CoinflipGame::step(const State& s, int action) const {
  StepResult out{s, -1.0, false};
  apply_move(out.next, n_, moves_.at(static_cast<std::size_t>(action)));
  out.terminal = terminal(out.next);
  if (out.terminal) out.reward = 1000.0;
  return out;
}

bool CoinflipGame::terminal(const State& s) const {
  return std::all_of(s.begin(), s.end(), [](int x) { return x == 1; });
}

std::string CoinflipGame::describe_action(const State&, int action) const {
  return to_string(moves_.at(static_cast<std::size_t>(action)));
}

int CoinflipGame::action_of(const CoinMove& move) const {
  const auto it = std::find(moves_.begin(), moves_.end(), move);
  if (it == moves_.end()) throw GameBoundError("move outside the board: " + to_string(move));
  return static_cast<int>(it - moves_.begin());
}

}  // namespace ttc::games
