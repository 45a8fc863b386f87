#include "ttc/games/turbo.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace ttc::games {

namespace {

using Mask = std::uint32_t;
constexpr int kUnsolvable = 1 << 20;

class TurboSearch {
 public:
  TurboSearch(int rows, int cols) : rows_(rows), cols_(cols) {
    std::vector<int> cur;
    enumerate(cur);
    monster_at_.assign(static_cast<std::size_t>(rows * cols), 0);
    for (std::size_t p = 0; p < placements_.size(); ++p) {
      for (int k = 0; k < rows - 2; ++k) {
        monster_at_[cell(k + 1, placements_[p][static_cast<std::size_t>(k)])] |= Mask{1} << p;
      }
    }
  }

  std::size_t placements() const { return placements_.size(); }
  Mask all() const { return placements_.size() == 32 ? ~Mask{0} : (Mask{1} << placements_.size()) - 1; }
  std::size_t states() const { return memo_.size(); }

  int value(Mask k) {
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;
    int best = kUnsolvable;
    const auto probes = frontier(k);
    if (probes.empty() && reaches_last_row(k)) best = 1;
    for (auto c : probes) {
      const Mask hit = k & monster_at_[c];
      const Mask miss = k & ~monster_at_[c];
      best = std::min(best, std::max(1 + value(hit), value(miss)));
    }
    memo_[k] = best;
    return best;
  }

  std::optional<std::pair<int, int>> best_probe(Mask k) {
    const auto probes = frontier(k);
    std::optional<std::pair<int, int>> out;
    int best = kUnsolvable + 1;
    for (auto c : probes) {
      const int v = std::max(1 + value(k & monster_at_[c]), value(k & ~monster_at_[c]));
      if (v < best) {
        best = v;
        out = std::pair{static_cast<int>(c) / cols_, static_cast<int>(c) % cols_};
      }
    }
    return out;
  }

 private:
  std::size_t cell(int r, int c) const { return static_cast<std::size_t>(r * cols_ + c); }

  void enumerate(std::vector<int>& cur) {
    if (static_cast<int>(cur.size()) == rows_ - 2) {
      placements_.push_back(cur);
      return;
    }
    for (int c = 0; c < cols_; ++c) {
      if (std::find(cur.begin(), cur.end(), c) != cur.end()) continue;
      cur.push_back(c);
      enumerate(cur);
      cur.pop_back();
    }
  }

  // Safe under every placement in k.
  bool safe(Mask k, std::size_t c) const { return (monster_at_[c] & k) == 0; }

  std::vector<bool> component(Mask k) const {
    std::vector<bool> seen(static_cast<std::size_t>(rows_ * cols_), false);
    std::vector<std::size_t> stack;
    for (int c = 0; c < cols_; ++c) {
      seen[cell(0, c)] = true;
      stack.push_back(cell(0, c));
    }
    while (!stack.empty()) {
      const auto at = stack.back();
      stack.pop_back();
      const int r = static_cast<int>(at) / cols_, c = static_cast<int>(at) % cols_;
      const int dr[] = {-1, 1, 0, 0}, dc[] = {0, 0, -1, 1};
      for (int d = 0; d < 4; ++d) {
        const int nr = r + dr[d], nc = c + dc[d];
        if (nr < 0 || nr >= rows_ || nc < 0 || nc >= cols_) continue;
        const auto n = cell(nr, nc);
        if (seen[n] || !safe(k, n)) continue;
        seen[n] = true;
        stack.push_back(n);
      }
    }
    return seen;
  }

  bool reaches_last_row(Mask k) const {
    const auto seen = component(k);
    for (int c = 0; c < cols_; ++c)
      if (seen[cell(rows_ - 1, c)]) return true;
    return false;
  }

  // Undetermined cells adjacent to the safe component; empty once the last row is reachable.
  std::vector<std::size_t> frontier(Mask k) const {
    const auto seen = component(k);
    for (int c = 0; c < cols_; ++c)
      if (seen[cell(rows_ - 1, c)]) return {};
    std::vector<std::size_t> out;
    for (int r = 1; r < rows_ - 1; ++r)
      for (int c = 0; c < cols_; ++c) {
        const auto at = cell(r, c);
        if (seen[at]) continue;
        const Mask m = monster_at_[at] & k;
        if (m == 0 || m == k) continue;
        const bool adjacent = (r > 0 && seen[cell(r - 1, c)]) || (r + 1 < rows_ && seen[cell(r + 1, c)]) ||
                              (c > 0 && seen[cell(r, c - 1)]) || (c + 1 < cols_ && seen[cell(r, c + 1)]);
        if (adjacent) out.push_back(at);
      }
    return out;
  }

  int rows_, cols_;
  std::vector<std::vector<int>> placements_;
  std::vector<Mask> monster_at_;
  std::unordered_map<Mask, int> memo_;
};

void check_bounds(int rows, int cols) {
  if (rows < TurboBounds::kMinRows || rows > TurboBounds::kMaxRows || cols < TurboBounds::kMinCols ||
      cols > TurboBounds::kMaxCols) {
    throw GameBoundError("turbo search is limited to rows 3..5 and cols 2..4 (got " + std::to_string(rows) + "x" +
                         std::to_string(cols) + ")");
  }
  if (cols < rows - 2) {
    throw GameBoundError("turbo needs cols >= rows - 2 so that monsters fit one per column");
  }
}

}  // namespace

TurboResult turbo_solve(int rows, int cols) {
  check_bounds(rows, cols);
  TurboSearch search(rows, cols);
  TurboResult r;
  r.placements = search.placements();
  const int v = search.value(search.all());
  r.attempts = v >= kUnsolvable ? kTurboNever : v;
  r.first_probe = search.best_probe(search.all());
  r.knowledge_states = search.states();
  return r;
}

int turbo_min_attempts(int rows, int cols) { return turbo_solve(rows, cols).attempts; }

TurboGame::TurboGame(int rows, int cols, int max_attempts) : rows_(rows), cols_(cols), max_attempts_(max_attempts) {
  if (rows < 3 || cols < 2 || cols < rows - 2 || rows > 30 || cols > 30) {
    throw GameBoundError("turbo game needs rows >= 3, cols >= max(2, rows - 2), sides <= 30");
  }
  if (max_attempts < 1) throw GameBoundError("turbo game needs max_attempts >= 1");
}

nlohmann::json TurboGame::params() const {
  return {{"rows", rows_}, {"cols", cols_}, {"max_attempts", max_attempts_}};
}

State TurboGame::state_with_monsters(const std::vector<int>& monster_cols) const {
  if (static_cast<int>(monster_cols.size()) != rows_ - 2) throw GameBoundError("one monster column per middle row");
  State s{0, 0, 0};
  s.insert(s.end(), monster_cols.begin(), monster_cols.end());
  s.insert(s.end(), static_cast<std::size_t>(rows_ - 2), 0);
  return s;
}

State TurboGame::initial_state(Rng& rng) const {
  std::vector<int> cols(static_cast<std::size_t>(cols_));
  std::iota(cols.begin(), cols.end(), 0);
  for (std::size_t i = cols.size(); i > 1; --i) std::swap(cols[i - 1], cols[uniform_below(rng, i)]);
  cols.resize(static_cast<std::size_t>(rows_ - 2));
  return state_with_monsters(cols);
}

namespace {
constexpr int kDr[] = {-1, 1, 0, 0};
constexpr int kDc[] = {0, 0, -1, 1};
}  // namespace

std::vector<int> TurboGame::legal_actions(const State& s) const {
  std::vector<int> out;
  if (terminal(s)) return out;
  const auto m = static_cast<std::size_t>(rows_ - 2);
  for (int a = 0; a < 4; ++a) {
    const int r = s[0] + kDr[a], c = s[1] + kDc[a];
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) continue;
    if (r >= 1 && r <= rows_ - 2) {
      const auto k = static_cast<std::size_t>(r - 1);
      if (s[3 + m + k] && s[3 + k] == c) continue;  // known monster
    }
    out.push_back(a);
  }
  return out;
}

StepResult TurboGame::step(const State& s, int action) const {
  StepResult out{s, -0.01, false};
  auto& n = out.next;
  const auto m = static_cast<std::size_t>(rows_ - 2);
  const int r = s[0] + kDr[action], c = s[1] + kDc[action];
  if (r >= 1 && r <= rows_ - 2 && s[3 + static_cast<std::size_t>(r - 1)] == c) {
    n[3 + m + static_cast<std::size_t>(r - 1)] = 1;
    n[2] += 1;
    n[0] = 0;
    n[1] = c;
    out.reward = -1.0;
  } else {
    n[0] = r;
    n[1] = c;
    if (r == rows_ - 1) {
      static constexpr double kFinish[] = {30.0, 20.0, 10.0};
      out.reward = s[2] < 3 ? kFinish[s[2]] : 0.0;
    }
  }
  out.terminal = terminal(n);
  return out;
}

bool TurboGame::terminal(const State& s) const { return s[0] == rows_ - 1 || s[2] >= max_attempts_; }

std::string TurboGame::describe_action(const State&, int action) const {
  static const char* kNames[] = {"up", "down", "left", "right"};
  return action >= 0 && action < 4 ? kNames[action] : "?";
}

}  // namespace ttc::games
