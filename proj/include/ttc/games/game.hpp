#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ttc/core/seed.hpp"

namespace ttc::games {

/// Full game state, including any part hidden from the player.
using State = std::vector<int>;

struct StepResult {
  State next;
  double reward = 0.0;
  bool terminal = false;
};

/// A Markov game with deterministic transitions; randomness enters only through
/// the initial state (e.g. hidden monster placement).
class Game {
 public:
  virtual ~Game() = default;
  virtual std::string name() const = 0;
  virtual nlohmann::json params() const = 0;
  virtual State initial_state(Rng& rng) const = 0;
  virtual std::vector<int> legal_actions(const State& s) const = 0;
  /// Precondition: `action` is legal in `s`.
  virtual StepResult step(const State& s, int action) const = 0;
  virtual bool terminal(const State& s) const = 0;
  virtual std::string describe_action(const State& s, int action) const;
};

/// Chooses an action given the state and its legal actions.
using Policy = std::function<int(const State&, const std::vector<int>& legal, Rng& rng)>;

Policy random_policy();
/// Plays the listed actions in order across calls, then returns -1 (illegal).
/// Intended for a single episode.
Policy scripted_policy(std::vector<int> actions);

struct TrajectoryStep {
  State state;
  int action = 0;
  double reward = 0.0;

  friend bool operator==(const TrajectoryStep&, const TrajectoryStep&) = default;
};

struct Trajectory {
  std::uint64_t seed = 0;
  State initial;
  std::vector<TrajectoryStep> steps;
  State final_state;
  bool terminal = false;   // reached a terminal state
  bool truncated = false;  // hit the step limit
  std::optional<std::string> error;  // illegal action from the policy
  double total_reward() const;

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

/// Episode e uses seed derive_seed(seed, "episode", e); its initial state and the
/// policy draw from separate streams of that seed.
std::vector<Trajectory> simulate(const Game& game, const Policy& policy, int episodes, std::uint64_t seed,
                                 int max_steps = 1000);

/// Replays actions from `initial`; the result equals the recorded trajectory.
Trajectory replay(const Game& game, const State& initial, const std::vector<int>& actions,
                  std::uint64_t seed = 0, int max_steps = 1000);

nlohmann::json to_json(const Trajectory& t);

/// Raised when parameters exceed the tractable bounds of an exact solver.
class GameBoundError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace ttc::games
