#include "ttc/arc/prompt.hpp"

#include <stdexcept>

namespace ttc::arc {

PromptStyle prompt_style_from_string(std::string_view name) {
  if (name == "plain") return PromptStyle::plain;
  if (name == "program") return PromptStyle::program;
  throw std::invalid_argument("unknown prompt style '" + std::string(name) + "'");
}

namespace {

void block(std::string& out, const std::string& label, const Grid& g) {
  out += label;
  out += ":\n";
  out += g.to_text();
  out += "\n";
}

}  // namespace

std::string format_prompt(const ArcTask& task, PromptStyle style) {
  std::string out;
  out += "Each example maps an input grid to an output grid. Colors are digits 0-9.\n\n";
  for (std::size_t i = 0; i < task.train.size(); ++i) {
    const auto n = std::to_string(i + 1);
    out += "Example " + n + "\n";
    block(out, "Input", task.train[i].input);
    block(out, "Output", task.train[i].output);
    out += "\n";
  }
  for (std::size_t i = 0; i < task.test.size(); ++i) {
    out += task.test.size() == 1 ? "Test\n" : "Test " + std::to_string(i + 1) + "\n";
    block(out, "Input", task.test[i].input);
    if (i + 1 < task.test.size()) out += "\n";
  }
  if (style == PromptStyle::program) {
    out +=
        "\nWrite a program that maps every example input to its output. Use one op per line from: "
        "rotate90, rotate180, rotate270, flip_h, flip_v, transpose, identity, recolor(a->b, ...), "
        "crop(r0, c0, h, w), pad(color, top, bottom, left, right), translate(dr, dc, fill), "
        "tile(ry, rx), overlay_nonzero(slot).\n";
  } else {
    out += "\nGive the test output grid as rows of digits.\n";
  }
  return out;
}

}  // namespace ttc::arc
