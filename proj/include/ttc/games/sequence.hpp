#pragma once

#include "ttc/games/game.hpp"

namespace ttc::games {

inline constexpr int kSequenceMaxBound = 8;

struct SequenceResult {
  int length = 0;
  std::vector<int> witness;  // lexicographically smallest sequence of maximal length
  std::uint64_t nodes = 0;   // DFS nodes visited
};

/// Longest sequence over 1..bound in which no block of consecutive terms can be
/// given signs summing to zero. Throws GameBoundError unless 1 <= bound <= 8.
SequenceResult sequence_solve(int bound);
int sequence_max_len(int bound);

/// True when some consecutive block of `seq` admits a zero signed sum.
bool has_zero_signed_block(const std::vector<int>& seq);

/// State: [status, terms...] with status 0 running, 1 violated, 2 reached `length`.
/// Action a appends term a + 1. Rewards: +1 per valid term, 0 and terminal on a
/// violation.
class SequenceGame final : public Game {
 public:
  SequenceGame(int bound, int length);
  std::string name() const override { return "sequence"; }
  nlohmann::json params() const override { return {{"bound", bound_}, {"length", length_}}; }
  State initial_state(Rng&) const override { return {0}; }
  std::vector<int> legal_actions(const State& s) const override;
  StepResult step(const State& s, int action) const override;
  bool terminal(const State& s) const override { return s.at(0) != 0; }
  std::string describe_action(const State& s, int action) const override;

 private:
  int bound_, length_;
};

}  // namespace ttc::games
