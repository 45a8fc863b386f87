#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ttc/core/candidate.hpp"

namespace ttc {

struct ConsensusReport {
  std::optional<AnswerValue> modal_answer;  // unset only for an empty input
  std::size_t agreeing = 0;
  std::size_t total = 0;
  double c = 0.0;          // agreeing / total
  double diversity = 0.0;  // 1 - c
};

/// Modal answer with the lexicographically smallest canonical form winning ties.
ConsensusReport consensus(const std::vector<AnswerValue>& answers);
/// Consensus over the candidates that carry an answer; errors are skipped.
ConsensusReport consensus(const std::vector<Candidate>& candidates);

/// Index of the first candidate carrying the modal answer, or nullopt if none has one.
std::optional<std::size_t> modal_index(const std::vector<Candidate>& candidates);

/// Index of the first candidate whose answer has the largest summed weight
/// (ties: smallest canonical form). `weights` is parallel to `candidates`.
std::optional<std::size_t> weighted_vote_index(const std::vector<Candidate>& candidates,
                                               const std::vector<double>& weights);

/// Index of the first candidate whose answer is the smallest canonical form among
/// the flagged ones.
std::optional<std::size_t> smallest_flagged_index(const std::vector<Candidate>& candidates,
                                                  const std::vector<bool>& flagged);

}  // namespace ttc
