#pragma once

#include <memory>

#include "ttc/games/game.hpp"

namespace ttc::games {

/// Circular necklace of m·n beads (1 = red). Action i flips bead i. Success when every
/// cut into m blocks of n consecutive beads gives blocks with pairwise distinct red
/// counts. Rewards: -0.1 per step, +100 on success, -100 once max_steps pass without it.
/// Starts all blue. State: [steps, beads...].
class NecklaceGame final : public Game {
 public:
  NecklaceGame(int m, int n, int max_steps = 200);
  std::string name() const override { return "necklace"; }
  nlohmann::json params() const override;
  State initial_state(Rng& rng) const override;
  std::vector<int> legal_actions(const State& s) const override;
  StepResult step(const State& s, int action) const override;
  bool terminal(const State& s) const override;
  bool satisfied(const State& s) const;

 private:
  int m_, n_, max_steps_;
};

/// Small version of the set-family problem: `sets` sets over `elements` candidate
/// elements. Valid when the common intersection is nonempty and, for every nonempty
/// subfamily T, the size of its intersection is a multiple of |T|.
/// Actions: a < elements·sets toggles element a / sets in set a % sets (+1 if the
/// family is valid afterwards, else -1); the last action submits (+10 if valid,
/// else -1), ending the episode. State: [submitted, membership...].
class SetFamilyGame final : public Game {
 public:
  SetFamilyGame(int sets, int elements);
  std::string name() const override { return "sets"; }
  nlohmann::json params() const override { return {{"sets", sets_}, {"elements", elements_}}; }
  State initial_state(Rng&) const override;
  std::vector<int> legal_actions(const State& s) const override;
  StepResult step(const State& s, int action) const override;
  bool terminal(const State& s) const override { return s.at(0) != 0; }
  bool valid(const State& s) const;
  /// Elements lying in at least half of the sets.
  int popular_elements(const State& s) const;

 private:
  int sets_, elements_;
};

/// A 1 × n² strip numbered 1..n² is cut into pieces which must tile an n × n grid
/// without rotation so that the number in cell (i, j) (1-indexed) is congruent to
/// i + j - 1 mod n. Actions: a < n² - 1 toggles the cut after cell a + 1 (-1);
/// action n² - 1 tries to assemble (+1000 and terminal on success, -1 otherwise).
/// State: [assembled, cuts...].
class StripGame final : public Game {
 public:
  explicit StripGame(int n);
  std::string name() const override { return "strip"; }
  nlohmann::json params() const override { return {{"n", n_}}; }
  State initial_state(Rng&) const override;
  std::vector<int> legal_actions(const State& s) const override;
  StepResult step(const State& s, int action) const override;
  bool terminal(const State& s) const override { return s.at(0) != 0; }
  /// Whether the pieces given by the cuts in `s` can be assembled.
  bool assemblable(const State& s) const;

 private:
  int n_;
};

/// n chests, all unlocked and empty. Each turn the player adds a gem to an unlocked
/// chest; then the fairy locks the unlocked chest with the fewest gems (lowest index on
/// ties) if more than one is unlocked, otherwise unlocks all. Reward: -(max - min gems).
/// Ends after `rounds` turns. State: [turn, gems..., locked...].
class ChestsGame final : public Game {
 public:
  ChestsGame(int n, int rounds = 20);
  std::string name() const override { return "chests"; }
  nlohmann::json params() const override { return {{"n", n_}, {"rounds", rounds_}}; }
  State initial_state(Rng&) const override;
  std::vector<int> legal_actions(const State& s) const override;
  StepResult step(const State& s, int action) const override;
  bool terminal(const State& s) const override { return s.at(0) >= rounds_; }

 private:
  int n_, rounds_;
};

/// Partition an n × n grid into paths. Actions: 0 starts a right-down path and 1 a
/// right-up path at the first unassigned cell in column-major order (-1 each);
/// 2 extends the newest path to the right, 3 extends it vertically (down or up by its
/// kind). +10 when every cell is assigned. State: [owner per cell..., paths, kind, last].
class PathsGame final : public Game {
 public:
  explicit PathsGame(int n);
  std::string name() const override { return "paths"; }
  nlohmann::json params() const override { return {{"n", n_}}; }
  State initial_state(Rng&) const override;
  std::vector<int> legal_actions(const State& s) const override;
  StepResult step(const State& s, int action) const override;
  bool terminal(const State& s) const override;
  std::string describe_action(const State& s, int action) const override;

 private:
  int extend_target(const State& s, int action) const;
  int n_;
};

/// Guess the largest number of ferry companies k for n islands: action k in 0..n.
/// +1 if k equals floor(log2 n), else -1; one step. State: [guessed].
class FerryGame final : public Game {
 public:
  explicit FerryGame(int n);
  std::string name() const override { return "ferry"; }
  nlohmann::json params() const override { return {{"n", n_}}; }
  State initial_state(Rng&) const override { return {0}; }
  std::vector<int> legal_actions(const State& s) const override;
  StepResult step(const State& s, int action) const override;
  bool terminal(const State& s) const override { return s.at(0) != 0; }

 private:
  int n_;
};

/// Builds any game by name: turbo, coinflip, sequence, ninja, necklace, sets, strip,
/// chests, paths, ferry. Missing parameters take small defaults.
std::unique_ptr<Game> make_game(const std::string& name, const nlohmann::json& params = nlohmann::json::object());
std::vector<std::string> game_names();

}  // namespace ttc::games
