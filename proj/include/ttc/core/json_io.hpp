#pragma once

#include <nlohmann/json.hpp>

#include "ttc/core/candidate.hpp"
#include "ttc/core/task.hpp"
#include "ttc/core/verdict.hpp"

namespace ttc {

using nlohmann::json;

json to_json(const AnswerValue& value);
AnswerValue answer_from_json(const json& j);

json to_json(const Verdict& verdict);
Verdict verdict_from_json(const json& j);

json to_json(const Candidate& candidate);
Candidate candidate_from_json(const json& j);

/// Task metadata only; verifier bindings are resolved by the loader that owns them.
json to_json(const Task& task);

}  // namespace ttc
