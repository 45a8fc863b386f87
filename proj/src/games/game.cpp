#include "ttc/games/game.hpp"

#include <algorithm>

namespace ttc::games {

std::string Game::describe_action(const State&, int action) const { return std::to_string(action); }

Policy random_policy() {
  return [](const State&, const std::vector<int>& legal, Rng& rng) {
    return legal[uniform_below(rng, legal.size())];
  };
}

Policy scripted_policy(std::vector<int> actions) {
  auto shared = std::make_shared<const std::vector<int>>(std::move(actions));
  auto cursor = std::make_shared<std::size_t>(0);
  return [shared, cursor](const State&, const std::vector<int>&, Rng&) {
    return *cursor < shared->size() ? (*shared)[(*cursor)++] : -1;
  };
}

double Trajectory::total_reward() const {
  double t = 0.0;
  for (const auto& s : steps) t += s.reward;
  return t;
}

namespace {

Trajectory run_episode(const Game& game, State state, const std::function<int(const State&, const std::vector<int>&)>& choose,
                       std::uint64_t seed, int max_steps) {
  Trajectory t;
  t.seed = seed;
  t.initial = state;
  for (int step = 0;; ++step) {
    if (game.terminal(state)) {
      t.terminal = true;
      break;
    }
    if (step >= max_steps) {
      t.truncated = true;
      break;
    }
    const auto legal = game.legal_actions(state);
    if (legal.empty()) break;
    const int action = choose(state, legal);
    if (std::find(legal.begin(), legal.end(), action) == legal.end()) {
      t.error = "illegal action " + std::to_string(action) + " at step " + std::to_string(step);
      break;
    }
    auto r = game.step(state, action);
    t.steps.push_back({state, action, r.reward});
    state = std::move(r.next);
  }
  t.final_state = std::move(state);
  return t;
}

}  // namespace

std::vector<Trajectory> simulate(const Game& game, const Policy& policy, int episodes, std::uint64_t seed,
                                 int max_steps) {
  std::vector<Trajectory> out;
  for (int e = 0; e < episodes; ++e) {
    const auto ep_seed = derive_seed(seed, "episode", static_cast<std::uint64_t>(e));
    Rng init_rng(derive_seed(ep_seed, "init"));
    Rng policy_rng(derive_seed(ep_seed, "policy"));
    out.push_back(run_episode(
        game, game.initial_state(init_rng),
        [&](const State& s, const std::vector<int>& legal) { return policy(s, legal, policy_rng); }, ep_seed,
        max_steps));
  }
  return out;
}

Trajectory replay(const Game& game, const State& initial, const std::vector<int>& actions, std::uint64_t seed,
                  int max_steps) {
  std::size_t i = 0;
  return run_episode(
      game, initial,
      [&](const State&, const std::vector<int>&) { return i < actions.size() ? actions[i++] : -1; }, seed,
      max_steps);
}

nlohmann::json to_json(const Trajectory& t) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : t.steps) steps.push_back({{"state", s.state}, {"action", s.action}, {"reward", s.reward}});
  nlohmann::json j = {{"seed", t.seed},          {"initial", t.initial},     {"steps", std::move(steps)},
                      {"final", t.final_state},  {"terminal", t.terminal},   {"truncated", t.truncated},
                      {"total_reward", t.total_reward()}};
  j["error"] = t.error ? nlohmann::json(*t.error) : nlohmann::json(nullptr);
  return j;
}

}  // namespace ttc::games
