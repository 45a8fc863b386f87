#include <gtest/gtest.h>

#include <bit>
#include <numeric>

#include "ttc/games/catalog.hpp"
#include "ttc/games/coinflip.hpp"
#include "ttc/games/ninja.hpp"
#include "ttc/games/sequence.hpp"
#include "ttc/games/turbo.hpp"
#include "ttc/games/value_iteration.hpp"

using namespace ttc;
using namespace ttc::games;

namespace {

bool parities_move_together(const std::array<int, 3>& before, const std::array<int, 3>& after) {
  const int d0 = (after[0] - before[0]) & 1;
  return ((after[1] - before[1]) & 1) == d0 && ((after[2] - before[2]) & 1) == d0;
}

}  // namespace

TEST(Coinflip, SolvableExactlyWhenAreaDivisibleByThree) {
  for (int m = 2; m <= 10; ++m)
    for (int n = 2; m * n <= kCoinflipMaxCells; ++n) EXPECT_EQ(coinflip_solvable(m, n), (m * n) % 3 == 0) << m << "x" << n;
  EXPECT_THROW(coinflip_solve(1, 3), GameBoundError);
  EXPECT_THROW(coinflip_solve(5, 5), GameBoundError);
}

TEST(Coinflip, WitnessReplaysToAllHeads) {
  for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 3}, {3, 3}, {3, 4}, {2, 6}}) {
    const auto r = coinflip_solve(m, n);
    ASSERT_TRUE(r.solvable);
    CoinBoard b(static_cast<std::size_t>(m * n), 0);
    for (const auto& mv : r.witness) apply_move(b, n, mv);
    EXPECT_TRUE(std::all_of(b.begin(), b.end(), [](int x) { return x == 1; })) << m << "x" << n;
  }
  EXPECT_EQ(coinflip_solve(2, 3).witness.size(), 2u);
  EXPECT_EQ(to_string(CoinMove{0, 1, true}), "(0,1)+TR");
}

TEST(Coinflip, MovesPreserveLabelParityRelation) {
  Rng rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 2 + static_cast<int>(uniform_below(rng, 3)), n = 2 + static_cast<int>(uniform_below(rng, 3));
    const auto moves = all_moves(m, n);
    EXPECT_EQ(moves.size(), static_cast<std::size_t>(2 * (m - 1) * (n - 1)));
    CoinBoard b(static_cast<std::size_t>(m * n), 0);
    const auto start = label_counts(b, n);
    for (int k = 0; k < 20; ++k) {
      const auto before = label_counts(b, n);
      apply_move(b, n, moves[uniform_below(rng, moves.size())]);
      EXPECT_TRUE(parities_move_together(before, label_counts(b, n)));
    }
    EXPECT_TRUE(parities_move_together(start, label_counts(b, n)));
  }
}

TEST(Coinflip, GameRewards) {
  CoinflipGame g(2, 3);
  Rng rng(0);
  auto s = g.initial_state(rng);
  const auto w = coinflip_solve(2, 3).witness;
  auto first = g.step(s, g.action_of(w[0]));
  EXPECT_DOUBLE_EQ(first.reward, -1.0);
  EXPECT_FALSE(first.terminal);
  auto last = g.step(first.next, g.action_of(w[1]));
  EXPECT_TRUE(last.terminal);
  EXPECT_DOUBLE_EQ(last.reward, 1000.0);
}

TEST(Sequence, MaximalLengths) {
  EXPECT_EQ(sequence_max_len(2), 3);
  EXPECT_EQ(sequence_max_len(3), 3);
  EXPECT_EQ(sequence_max_len(4), 7);
  const auto r = sequence_solve(4);
  EXPECT_EQ(r.witness.size(), 7u);
  EXPECT_FALSE(has_zero_signed_block(r.witness));
  for (int x : r.witness) EXPECT_TRUE(x >= 1 && x <= 4);
  EXPECT_THROW(sequence_solve(kSequenceMaxBound + 1), GameBoundError);
}

TEST(Sequence, ZeroSignedBlockDetection) {
  EXPECT_TRUE(has_zero_signed_block({1, 1}));
  EXPECT_TRUE(has_zero_signed_block({2, 1, 1}));
  EXPECT_FALSE(has_zero_signed_block({1, 2}));
  EXPECT_FALSE(has_zero_signed_block({1}));
}

TEST(Sequence, GameEndsOnViolation) {
  SequenceGame g(3, 5);
  Rng rng(0);
  auto s = g.initial_state(rng);
  auto a = g.step(s, 0);  // 1
  EXPECT_DOUBLE_EQ(a.reward, 1.0);
  auto b = g.step(a.next, 0);  // 1, 1: 1 - 1 = 0
  EXPECT_TRUE(b.terminal);
  EXPECT_DOUBLE_EQ(b.reward, 0.0);
}

TEST(Ninja, GuaranteeIsOnePlusFloorLog2) {
  for (int n = 2; n <= kNinjaMaxRows; ++n) EXPECT_EQ(ninja_guarantee(n), std::bit_width(static_cast<unsigned>(n))) << n;
  const auto r = ninja_solve(5);
  EXPECT_EQ(best_path_reds(r.worst_coloring), r.guarantee);
  EXPECT_EQ(r.colorings, 120u);
  EXPECT_THROW(ninja_solve(kNinjaMaxRows + 1), GameBoundError);
}

TEST(Ninja, GameCollectsRedCircles) {
  NinjaGame g(3);
  const auto s = g.state_with_coloring({0, 1, 2});
  auto a = g.step(s, 1);
  EXPECT_DOUBLE_EQ(a.reward, 1.0);
  auto b = g.step(a.next, 1);
  EXPECT_DOUBLE_EQ(b.reward, 1.0);
  EXPECT_TRUE(b.terminal);
}

TEST(Turbo, SearchValues) {
  EXPECT_EQ(turbo_min_attempts(3, 2), 2);
  EXPECT_EQ(turbo_min_attempts(3, 3), 2);
  EXPECT_EQ(turbo_min_attempts(4, 3), 3);
  EXPECT_EQ(turbo_min_attempts(4, 4), 3);
  const auto blocked = turbo_solve(4, 2);
  EXPECT_FALSE(blocked.reachable());
  const auto r = turbo_solve(4, 3);
  EXPECT_EQ(r.placements, 6u);
  EXPECT_TRUE(r.first_probe);
  EXPECT_GT(r.knowledge_states, 0u);
  EXPECT_THROW(turbo_solve(6, 4), GameBoundError);
  EXPECT_THROW(turbo_solve(5, 2), GameBoundError);
}

TEST(Turbo, CollisionRevealsAndResets) {
  TurboGame g(4, 3);
  const auto s = g.state_with_monsters({1, 0});
  auto down = g.step(s, 1);  // (0,0) -> (1,0): safe
  EXPECT_DOUBLE_EQ(down.reward, -0.01);
  auto hit = g.step(down.next, 1);  // (2,0) holds a monster
  EXPECT_DOUBLE_EQ(hit.reward, -1.0);
  EXPECT_EQ(hit.next[0], 0);
  EXPECT_EQ(hit.next[2], 1);
  EXPECT_FALSE(hit.terminal);
  // The revealed monster is no longer a legal target.
  auto again = g.step(hit.next, 1);
  const auto legal = g.legal_actions(again.next);
  EXPECT_EQ(std::count(legal.begin(), legal.end(), 1), 0);
}

TEST(Turbo, InitialStatesPlaceDistinctColumns) {
  TurboGame g(5, 4);
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    const auto s = g.initial_state(rng);
    std::set<int> cols(s.begin() + 3, s.begin() + 6);
    EXPECT_EQ(cols.size(), 3u);
  }
}

TEST(Catalog, EveryGameSimulatesWithLegalActions) {
  for (const auto& name : game_names()) {
    const auto game = make_game(name);
    const auto runs = simulate(*game, random_policy(), 5, 3, 200);
    ASSERT_EQ(runs.size(), 5u) << name;
    for (const auto& t : runs) {
      EXPECT_FALSE(t.error) << name;
      EXPECT_TRUE(t.terminal || t.truncated) << name;
      std::vector<int> actions;
      for (const auto& st : t.steps) actions.push_back(st.action);
      EXPECT_EQ(replay(*game, t.initial, actions, t.seed, 200), t) << name;
    }
    EXPECT_EQ(simulate(*game, random_policy(), 3, 9, 50), simulate(*game, random_policy(), 3, 9, 50)) << name;
  }
  EXPECT_THROW(make_game("chess"), GameBoundError);
}

TEST(Catalog, ScriptedPolicyReportsIllegalAction) {
  const auto game = make_game("ferry", {{"n", 8}});
  const auto t = simulate(*game, scripted_policy({3}), 1, 0);
  EXPECT_DOUBLE_EQ(t[0].total_reward(), 1.0);
  const auto bad = simulate(*game, scripted_policy({}), 1, 0);
  EXPECT_TRUE(bad[0].error);
}

TEST(Catalog, SetFamilyAndStrip) {
  SetFamilyGame sets(2, 4);
  Rng rng(0);
  auto s = sets.initial_state(rng);
  EXPECT_FALSE(sets.valid(s));
  StripGame strip(3);
  EXPECT_FALSE(strip.assemblable(strip.initial_state(rng)));
}

TEST(ValueIteration, SolvesSequenceGameOptimally) {
  SequenceGame g(4, 7);
  Rng rng(0);
  ValueIterationOptions opt;
  opt.gamma = 1.0;
  const auto table = value_iterate(g, g.initial_state(rng), opt);
  EXPECT_DOUBLE_EQ(table.values[0], 7.0);
  const auto run = greedy_rollout(g, table);
  EXPECT_DOUBLE_EQ(run.total_reward(), 7.0);
  std::vector<int> seq;
  for (const auto& st : run.steps) seq.push_back(st.action + 1);
  EXPECT_FALSE(has_zero_signed_block(seq));
}

TEST(ValueIteration, CoinflipPolicyUsesShortestWitness) {
  CoinflipGame g(2, 3);
  Rng rng(0);
  const auto table = value_iterate(g, g.initial_state(rng), {0.9, 1e-10, 100000, 100000});
  const auto run = greedy_rollout(g, table);
  EXPECT_TRUE(run.terminal);
  EXPECT_EQ(run.steps.size(), coinflip_solve(2, 3).witness.size());
}

TEST(ValueIteration, RefusesNonTerminatingUndiscountedGames) {
  CoinflipGame g(2, 2);  // all heads is unreachable
  Rng rng(0);
  ValueIterationOptions opt;
  opt.gamma = 1.0;
  EXPECT_THROW(value_iterate(g, g.initial_state(rng), opt), GameBoundError);
  opt.gamma = 0.5;
  opt.max_states = 3;
  EXPECT_THROW(value_iterate(g, g.initial_state(rng), opt), GameBoundError);
}
