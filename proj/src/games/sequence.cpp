#include "ttc/games/sequence.hpp"

#include <bitset>

namespace ttc::games {

namespace {

constexpr int kOffset = 256;
constexpr int kMaxDepth = 64;
using SumSet = std::bitset<2 * kOffset + 1>;

SumSet singleton(int x) {
  SumSet s;
  s.set(static_cast<std::size_t>(kOffset + x));
  s.set(static_cast<std::size_t>(kOffset - x));
  return s;
}

// Extends every suffix set by x; false if zero becomes reachable.
bool extend(std::vector<SumSet>& sets, int x) {
  for (auto& s : sets) {
    s = (s << static_cast<std::size_t>(x)) | (s >> static_cast<std::size_t>(x));
    if (s.test(kOffset)) return false;
  }
  sets.push_back(singleton(x));
  return true;
}

struct Dfs {
  int bound;
  std::vector<int> current;
  SequenceResult best;

  void run(const std::vector<SumSet>& sets) {
    ++best.nodes;
    if (static_cast<int>(current.size()) > best.length) {
      best.length = static_cast<int>(current.size());
      best.witness = current;
    }
    if (static_cast<int>(current.size()) >= kMaxDepth) throw GameBoundError("sequence search exceeded depth limit");
    for (int x = 1; x <= bound; ++x) {
      auto next = sets;
      if (!extend(next, x)) continue;
      current.push_back(x);
      run(next);
      current.pop_back();
    }
  }
};

}  // namespace

SequenceResult sequence_solve(int bound) {
  if (bound < 1 || bound > kSequenceMaxBound) {
    throw GameBoundError("sequence search is limited to 1 <= bound <= " + std::to_string(kSequenceMaxBound));
  }
  Dfs dfs{bound, {}, {}};
  dfs.run({});
  return dfs.best;
}

int sequence_max_len(int bound) { return sequence_solve(bound).length; }

bool has_zero_signed_block(const std::vector<int>& seq) {
  std::vector<SumSet> sets;
  for (int x : seq) {
    if (x < 1 || x >= kOffset / 4) throw GameBoundError("sequence terms must lie in 1..63");
    if (!extend(sets, x)) return true;
    if (sets.size() > static_cast<std::size_t>(kMaxDepth)) throw GameBoundError("sequence too long to check");
  }
  return false;
}

SequenceGame::SequenceGame(int bound, int length) : bound_(bound), length_(length) {
  if (bound < 1 || bound > 63) throw GameBoundError("sequence game needs 1 <= bound <= 63");
  if (length < 1 || length > kMaxDepth) throw GameBoundError("sequence game needs 1 <= length <= 64");
}

std::vector<int> SequenceGame::legal_actions(const State& s) const {
  if (terminal(s)) return {};
  std::vector<int> out(static_cast<std::size_t>(bound_));
  for (int a = 0; a < bound_; ++a) out[static_cast<std::size_t>(a)] = a;
  return out;
}

StepResult SequenceGame::step(const State& s, int action) const {
  StepResult out{s, 1.0, false};
  out.next.push_back(action + 1);
  const std::vector<int> terms(out.next.begin() + 1, out.next.end());
  if (has_zero_signed_block(terms)) {
    out.next[0] = 1;
    out.reward = 0.0;
  } else if (static_cast<int>(terms.size()) >= length_) {
    out.next[0] = 2;
  }
  out.terminal = terminal(out.next);
  return out;
}

std::string SequenceGame::describe_action(const State&, int action) const {
  return "append " + std::to_string(action + 1);
}

}  // namespace ttc::games
