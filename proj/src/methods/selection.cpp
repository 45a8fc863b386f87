#include "ttc/methods/selection.hpp"

#include <map>

namespace ttc {

namespace {

// Keyed by canonical form; std::map iterates in lexicographic order, so a strict
// comparison keeps the smallest key among equals.
template <class Weight>
std::optional<std::string> best_key(const std::map<std::string, Weight>& tally) {
  std::optional<std::string> best;
  Weight best_w{};
  for (const auto& [key, w] : tally) {
    if (!best || w > best_w) {
      best = key;
      best_w = w;
    }
  }
  return best;
}

std::optional<std::size_t> first_with(const std::vector<Candidate>& candidates, const std::string& key) {
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (candidates[i].ok() && candidates[i].answer->canonical() == key) return i;
  }
  return std::nullopt;
}

}  // namespace

ConsensusReport consensus(const std::vector<AnswerValue>& answers) {
  ConsensusReport r;
  r.total = answers.size();
  if (answers.empty()) return r;
  std::map<std::string, std::size_t> tally;
  for (const auto& a : answers) ++tally[a.canonical()];
  const auto key = *best_key(tally);
  for (const auto& a : answers) {
    if (a.canonical() == key) {
      r.modal_answer = a;
      break;
    }
  }
  r.agreeing = tally[key];
  r.c = static_cast<double>(r.agreeing) / static_cast<double>(r.total);
  r.diversity = 1.0 - r.c;
  return r;
}

ConsensusReport consensus(const std::vector<Candidate>& candidates) {
  std::vector<AnswerValue> answers;
  for (const auto& c : candidates)
    if (c.ok()) answers.push_back(*c.answer);
  return consensus(answers);
}

std::optional<std::size_t> modal_index(const std::vector<Candidate>& candidates) {
  std::map<std::string, std::size_t> tally;
  for (const auto& c : candidates)
    if (c.ok()) ++tally[c.answer->canonical()];
  const auto key = best_key(tally);
  if (!key) return std::nullopt;
  return first_with(candidates, *key);
}

std::optional<std::size_t> weighted_vote_index(const std::vector<Candidate>& candidates,
                                               const std::vector<double>& weights) {
  std::map<std::string, double> tally;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    if (candidates[i].ok()) tally[candidates[i].answer->canonical()] += weights.at(i);
  // Sums that differ only by rounding count as ties.
  std::optional<std::string> best;
  double best_w = 0.0;
  for (const auto& [key, w] : tally) {
    if (!best || w > best_w + 1e-12) {
      best = key;
      best_w = w;
    }
  }
  if (!best) return std::nullopt;
  return first_with(candidates, *best);
}

std::optional<std::size_t> smallest_flagged_index(const std::vector<Candidate>& candidates,
                                                  const std::vector<bool>& flagged) {
  std::optional<std::string> best;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!flagged.at(i) || !candidates[i].ok()) continue;
    const auto key = candidates[i].answer->canonical();
    if (!best || key < *best) best = key;
  }
  if (!best) return std::nullopt;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (flagged[i] && candidates[i].ok() && candidates[i].answer->canonical() == *best) return i;
  }
  return std::nullopt;
}

}  // namespace ttc
