#pragma once

#include <string>
#include <string_view>

#include "ttc/arc/task.hpp"

namespace ttc::arc {

enum class PromptStyle { plain, program };

/// Throws std::invalid_argument for unknown names ("plain", "program").
PromptStyle prompt_style_from_string(std::string_view name);

/// Deterministic serialization: labeled train blocks of digit rows, test input last.
/// The "program" style appends an instruction asking for a DSL program.
std::string format_prompt(const ArcTask& task, PromptStyle style = PromptStyle::plain);

}  // namespace ttc::arc
