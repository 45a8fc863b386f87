#include "ttc/games/catalog.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <set>

#include "ttc/games/coinflip.hpp"
#include "ttc/games/ninja.hpp"
#include "ttc/games/sequence.hpp"
#include "ttc/games/turbo.hpp"

namespace ttc::games {

namespace {

std::vector<int> iota_actions(int count) {
  std::vector<int> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = i;
  return out;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw GameBoundError(msg);
}

}  // namespace

// necklace

NecklaceGame::NecklaceGame(int m, int n, int max_steps) : m_(m), n_(n), max_steps_(max_steps) {
  require(m >= 1 && n >= 1 && m * n <= 64, "necklace needs m, n >= 1 and m*n <= 64");
  require(max_steps >= 1, "necklace needs max_steps >= 1");
}

nlohmann::json NecklaceGame::params() const { return {{"m", m_}, {"n", n_}, {"max_steps", max_steps_}}; }

State NecklaceGame::initial_state(Rng&) const { return State(static_cast<std::size_t>(1 + m_ * n_), 0); }

bool NecklaceGame::satisfied(const State& s) const {
  const int len = m_ * n_;
  for (int offset = 0; offset < n_; ++offset) {
    std::set<int> counts;
    for (int b = 0; b < m_; ++b) {
      int red = 0;
      for (int k = 0; k < n_; ++k) red += s[static_cast<std::size_t>(1 + (offset + b * n_ + k) % len)];
      if (!counts.insert(red).second) return false;
    }
  }
  return true;
}

bool NecklaceGame::terminal(const State& s) const { return s.at(0) >= max_steps_ || satisfied(s); }

std::vector<int> NecklaceGame::legal_actions(const State& s) const {
  return terminal(s) ? std::vector<int>{} : iota_actions(m_ * n_);
}

StepResult NecklaceGame::step(const State& s, int action) const {
  StepResult out{s, -0.1, false};
  out.next[0] += 1;
  out.next[static_cast<std::size_t>(1 + action)] ^= 1;
  if (satisfied(out.next)) out.reward += 100.0;
  else if (out.next[0] >= max_steps_) out.reward -= 100.0;
  out.terminal = terminal(out.next);
  return out;
}

// set family

SetFamilyGame::SetFamilyGame(int sets, int elements) : sets_(sets), elements_(elements) {
  require(sets >= 1 && sets <= 4, "sets game needs 1 <= sets <= 4");
  require(elements >= 1 && elements <= 12, "sets game needs 1 <= elements <= 12");
}

State SetFamilyGame::initial_state(Rng&) const { return State(static_cast<std::size_t>(1 + sets_ * elements_), 0); }

bool SetFamilyGame::valid(const State& s) const {
  for (unsigned family = 1; family < (1u << sets_); ++family) {
    int common = 0;
    for (int e = 0; e < elements_; ++e) {
      bool all = true;
      for (int j = 0; j < sets_ && all; ++j)
        if ((family >> j) & 1u) all = s[static_cast<std::size_t>(1 + e * sets_ + j)] != 0;
      common += all ? 1 : 0;
    }
    if (common % std::popcount(family) != 0) return false;
    if (family == (1u << sets_) - 1 && common == 0) return false;
  }
  return true;
}

int SetFamilyGame::popular_elements(const State& s) const {
  int out = 0;
  for (int e = 0; e < elements_; ++e) {
    int in = 0;
    for (int j = 0; j < sets_; ++j) in += s[static_cast<std::size_t>(1 + e * sets_ + j)];
    if (2 * in >= sets_) ++out;
  }
  return out;
}

std::vector<int> SetFamilyGame::legal_actions(const State& s) const {
  return terminal(s) ? std::vector<int>{} : iota_actions(sets_ * elements_ + 1);
}

StepResult SetFamilyGame::step(const State& s, int action) const {
  StepResult out{s, 0.0, false};
  if (action == sets_ * elements_) {
    out.next[0] = 1;
    out.reward = valid(s) ? 10.0 : -1.0;
  } else {
    out.next[static_cast<std::size_t>(1 + action)] ^= 1;
    out.reward = valid(out.next) ? 1.0 : -1.0;
  }
  out.terminal = terminal(out.next);
  return out;
}

// strip

StripGame::StripGame(int n) : n_(n) { require(n >= 1 && n <= 4, "strip game needs 1 <= n <= 4"); }

State StripGame::initial_state(Rng&) const { return State(static_cast<std::size_t>(n_ * n_), 0); }

bool StripGame::assemblable(const State& s) const {
  // pieces as (first value, length), values 1-based
  std::vector<std::pair<int, int>> pieces;
  int start = 1;
  for (int v = 1; v <= n_ * n_; ++v) {
    const bool cut_after = v == n_ * n_ || s[static_cast<std::size_t>(v)] != 0;
    if (cut_after) {
      pieces.emplace_back(start, v - start + 1);
      start = v + 1;
    }
  }
  if (std::any_of(pieces.begin(), pieces.end(), [&](const auto& p) { return p.second > n_; })) return false;
  std::vector<bool> used(pieces.size(), false);
  std::vector<bool> filled(static_cast<std::size_t>(n_ * n_), false);
  std::function<bool()> place = [&]() -> bool {
    const auto it = std::find(filled.begin(), filled.end(), false);
    if (it == filled.end()) return true;
    const int cell = static_cast<int>(it - filled.begin());
    const int i = cell / n_ + 1, j = cell % n_ + 1;
    int room = 0;
    while (j + room <= n_ && !filled[static_cast<std::size_t>(cell + room)]) ++room;
    std::set<std::pair<int, int>> tried;  // identical (start mod n, length) pieces are interchangeable
    for (std::size_t p = 0; p < pieces.size(); ++p) {
      const auto [first, len] = pieces[p];
      if (used[p] || len > room) continue;
      if (((first - (i + j - 1)) % n_ + n_) % n_ != 0) continue;
      if (!tried.insert({first % n_, len}).second) continue;
      used[p] = true;
      for (int k = 0; k < len; ++k) filled[static_cast<std::size_t>(cell + k)] = true;
      if (place()) return true;
      for (int k = 0; k < len; ++k) filled[static_cast<std::size_t>(cell + k)] = false;
      used[p] = false;
    }
    return false;
  };
  return place();
}

std::vector<int> StripGame::legal_actions(const State& s) const {
  return terminal(s) ? std::vector<int>{} : iota_actions(n_ * n_);
}

StepResult StripGame::step(const State& s, int action) const {
  StepResult out{s, -1.0, false};
  if (action == n_ * n_ - 1) {
    if (assemblable(s)) {
      out.next[0] = 1;
      out.reward = 1000.0;
    }
  } else {
    out.next[static_cast<std::size_t>(1 + action)] ^= 1;
  }
  out.terminal = terminal(out.next);
  return out;
}

// chests

ChestsGame::ChestsGame(int n, int rounds) : n_(n), rounds_(rounds) {
  require(n >= 2 && n <= 16, "chests game needs 2 <= n <= 16");
  require(rounds >= 1, "chests game needs rounds >= 1");
}

State ChestsGame::initial_state(Rng&) const { return State(static_cast<std::size_t>(1 + 2 * n_), 0); }

std::vector<int> ChestsGame::legal_actions(const State& s) const {
  std::vector<int> out;
  if (terminal(s)) return out;
  for (int i = 0; i < n_; ++i)
    if (s[static_cast<std::size_t>(1 + n_ + i)] == 0) out.push_back(i);
  return out;
}

StepResult ChestsGame::step(const State& s, int action) const {
  StepResult out{s, 0.0, false};
  auto& n = out.next;
  const auto gems = [&](int i) -> int& { return n[static_cast<std::size_t>(1 + i)]; };
  const auto locked = [&](int i) -> int& { return n[static_cast<std::size_t>(1 + n_ + i)]; };
  n[0] += 1;
  gems(action) += 1;
  std::vector<int> open;
  for (int i = 0; i < n_; ++i)
    if (!locked(i)) open.push_back(i);
  if (open.size() > 1) {
    const int pick = *std::min_element(open.begin(), open.end(), [&](int a, int b) {
      return gems(a) != gems(b) ? gems(a) < gems(b) : a < b;
    });
    locked(pick) = 1;
  } else {
    for (int i = 0; i < n_; ++i) locked(i) = 0;
  }
  const auto [lo, hi] = std::minmax_element(n.begin() + 1, n.begin() + 1 + n_);
  out.reward = -static_cast<double>(*hi - *lo);
  out.terminal = terminal(n);
  return out;
}

// paths

PathsGame::PathsGame(int n) : n_(n) { require(n >= 1 && n <= 6, "paths game needs 1 <= n <= 6"); }

State PathsGame::initial_state(Rng&) const {
  State s(static_cast<std::size_t>(n_ * n_), -1);
  s.insert(s.end(), {0, 0, -1});  // paths, kind of newest, last cell of newest
  return s;
}

bool PathsGame::terminal(const State& s) const {
  return std::none_of(s.begin(), s.begin() + n_ * n_, [](int o) { return o < 0; });
}

int PathsGame::extend_target(const State& s, int action) const {
  const auto cells = static_cast<std::size_t>(n_ * n_);
  if (s[cells] == 0) return -1;
  const int last = s[cells + 2];
  const int r = last / n_, c = last % n_;
  int nr = r, nc = c;
  if (action == 2) nc += 1;
  else nr += s[cells + 1] == 0 ? 1 : -1;
  if (nr < 0 || nr >= n_ || nc >= n_) return -1;
  const int target = nr * n_ + nc;
  return s[static_cast<std::size_t>(target)] < 0 ? target : -1;
}

std::vector<int> PathsGame::legal_actions(const State& s) const {
  if (terminal(s)) return {};
  std::vector<int> out{0, 1};
  for (int a = 2; a <= 3; ++a)
    if (extend_target(s, a) >= 0) out.push_back(a);
  return out;
}

StepResult PathsGame::step(const State& s, int action) const {
  StepResult out{s, 0.0, false};
  auto& n = out.next;
  const auto cells = static_cast<std::size_t>(n_ * n_);
  int target;
  if (action <= 1) {
    target = -1;
    for (int c = 0; c < n_ && target < 0; ++c)
      for (int r = 0; r < n_; ++r)
        if (n[static_cast<std::size_t>(r * n_ + c)] < 0) {
          target = r * n_ + c;
          break;
        }
    n[cells] += 1;
    n[cells + 1] = action;
    out.reward = -1.0;
  } else {
    target = extend_target(s, action);
  }
  n[static_cast<std::size_t>(target)] = n[cells] - 1;
  n[cells + 2] = target;
  out.terminal = terminal(n);
  if (out.terminal) out.reward += 10.0;
  return out;
}

std::string PathsGame::describe_action(const State&, int action) const {
  static const char* kNames[] = {"start right-down", "start right-up", "extend right", "extend vertically"};
  return action >= 0 && action < 4 ? kNames[action] : "?";
}

// ferry

FerryGame::FerryGame(int n) : n_(n) { require(n >= 2 && n <= 4096, "ferry game needs 2 <= n <= 4096"); }

std::vector<int> FerryGame::legal_actions(const State& s) const {
  return terminal(s) ? std::vector<int>{} : iota_actions(n_ + 1);
}

StepResult FerryGame::step(const State&, int action) const {
  const int answer = std::bit_width(static_cast<unsigned>(n_)) - 1;
  return {{1}, action == answer ? 1.0 : -1.0, true};
}

// factory

namespace {

int param(const nlohmann::json& p, const char* key, int fallback) {
  if (!p.contains(key)) return fallback;
  if (!p.at(key).is_number_integer()) throw GameBoundError(std::string("game parameter '") + key + "' must be an integer");
  return p.at(key).get<int>();
}

using Factory = std::function<std::unique_ptr<Game>(const nlohmann::json&)>;

const std::map<std::string, Factory>& factories() {
  static const std::map<std::string, Factory> table{
      {"turbo", [](const auto& p) { return std::make_unique<TurboGame>(param(p, "rows", 4), param(p, "cols", 3), param(p, "max_attempts", 3)); }},
      {"coinflip", [](const auto& p) { return std::make_unique<CoinflipGame>(param(p, "m", 2), param(p, "n", 3)); }},
      {"sequence", [](const auto& p) { return std::make_unique<SequenceGame>(param(p, "bound", 4), param(p, "length", 7)); }},
      {"ninja", [](const auto& p) { return std::make_unique<NinjaGame>(param(p, "n", 6)); }},
      {"necklace", [](const auto& p) { return std::make_unique<NecklaceGame>(param(p, "m", 3), param(p, "n", 3), param(p, "max_steps", 200)); }},
      {"sets", [](const auto& p) { return std::make_unique<SetFamilyGame>(param(p, "sets", 2), param(p, "elements", 4)); }},
      {"strip", [](const auto& p) { return std::make_unique<StripGame>(param(p, "n", 3)); }},
      {"chests", [](const auto& p) { return std::make_unique<ChestsGame>(param(p, "n", 3), param(p, "rounds", 20)); }},
      {"paths", [](const auto& p) { return std::make_unique<PathsGame>(param(p, "n", 3)); }},
      {"ferry", [](const auto& p) { return std::make_unique<FerryGame>(param(p, "n", 8)); }},
  };
  return table;
}

}  // namespace

std::unique_ptr<Game> make_game(const std::string& name, const nlohmann::json& params) {
  const auto& table = factories();
  const auto it = table.find(name);
  if (it == table.end()) throw GameBoundError("unknown game '" + name + "'");
  if (!params.is_object()) throw GameBoundError("game parameters must be a JSON object");
  return it->second(params);
}

std::vector<std::string> game_names() {
  std::vector<std::string> out;
  for (const auto& [name, _] : factories()) out.push_back(name);
  return out;
}

}  // namespace ttc::games
