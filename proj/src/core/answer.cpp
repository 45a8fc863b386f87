#include "ttc/core/answer.hpp"

#include <cctype>
#include <limits>

#include <nlohmann/json.hpp>

#include "ttc/core/errors.hpp"

namespace ttc {

std::string_view to_string(AnswerKind kind) {
  switch (kind) {
    case AnswerKind::choice: return "choice";
    case AnswerKind::text: return "text";
    case AnswerKind::integer: return "integer";
    case AnswerKind::grid: return "grid";
  }
  return "text";
}

AnswerKind answer_kind_from_string(std::string_view name) {
  if (name == "choice") return AnswerKind::choice;
  if (name == "text") return AnswerKind::text;
  if (name == "integer") return AnswerKind::integer;
  if (name == "grid") return AnswerKind::grid;
  throw ConfigError("unknown answer kind '" + std::string(name) + "'");
}

AnswerValue AnswerValue::choice(char letter) {
  const auto up = static_cast<char>(std::toupper(static_cast<unsigned char>(letter)));
  if (up < 'A' || up > 'Z') throw AnswerFormatError("choice must be a single letter A-Z");
  return AnswerValue(AnswerKind::choice, std::string(1, up));
}

AnswerValue AnswerValue::text(std::string normalized) {
  return AnswerValue(AnswerKind::text, std::move(normalized));
}

AnswerValue AnswerValue::integer(std::int64_t value) {
  return AnswerValue(AnswerKind::integer, value);
}

AnswerValue AnswerValue::grid(arc::Grid g) { return AnswerValue(AnswerKind::grid, std::move(g)); }

std::string AnswerValue::canonical() const {
  switch (kind_) {
    case AnswerKind::choice:
    case AnswerKind::text: return as_string();
    case AnswerKind::integer: return std::to_string(as_integer());
    case AnswerKind::grid: {
      std::string s = as_grid().to_text();
      for (auto& ch : s) {
        if (ch == '\n') ch = '|';
      }
      return s;
    }
  }
  return {};
}

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

AnswerValue normalize_text(std::string_view raw) {
  std::string out;
  bool pending_space = false;
  for (char ch : trim(raw)) {
    if (is_space(ch)) {
      pending_space = true;
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  }
  if (out.empty()) throw AnswerFormatError("empty answer");
  return AnswerValue::text(std::move(out));
}

AnswerValue normalize_choice(std::string_view raw) {
  auto s = trim(raw);
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = trim(s.substr(1, s.size() - 2));
  while (!s.empty() && (s.back() == '.' || s.back() == ')')) s = trim(s.substr(0, s.size() - 1));
  if (s.size() != 1 || !std::isalpha(static_cast<unsigned char>(s.front()))) {
    throw AnswerFormatError("choice answer '" + std::string(raw) + "' is not a single letter");
  }
  return AnswerValue::choice(s.front());
}

AnswerValue normalize_integer(std::string_view raw) {
  std::size_t i = 0;
  while (i < raw.size() && !std::isdigit(static_cast<unsigned char>(raw[i]))) ++i;
  if (i == raw.size()) {
    throw AnswerFormatError("no integer literal in '" + std::string(raw) + "'");
  }
  bool negative = i > 0 && raw[i - 1] == '-';
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
  std::int64_t value = 0;
  for (; i < raw.size() && std::isdigit(static_cast<unsigned char>(raw[i])); ++i) {
    const int digit = raw[i] - '0';
    if (value > (kMax - digit) / 10) {
      throw AnswerFormatError("integer literal out of range in '" + std::string(raw) + "'");
    }
    value = value * 10 + digit;
  }
  return AnswerValue::integer(negative ? -value : value);
}

AnswerValue normalize_grid(std::string_view raw) {
  try {
    const auto s = trim(raw);
    if (!s.empty() && s.front() == '[') {
      const auto j = nlohmann::json::parse(s);
      return AnswerValue::grid(arc::Grid::from_rows(j.get<std::vector<std::vector<int>>>()));
    }
    return AnswerValue::grid(arc::Grid::from_text(s));
  } catch (const std::exception& e) {
    throw AnswerFormatError(std::string("malformed grid answer: ") + e.what());
  }
}

}  // namespace

AnswerValue normalize_answer(std::string_view raw, AnswerKind kind) {
  if (trim(raw).empty()) throw AnswerFormatError("empty answer");
  switch (kind) {
    case AnswerKind::choice: return normalize_choice(raw);
    case AnswerKind::text: return normalize_text(raw);
    case AnswerKind::integer: return normalize_integer(raw);
    case AnswerKind::grid: return normalize_grid(raw);
  }
  throw AnswerFormatError("unknown answer kind");
}

std::optional<AnswerValue> try_normalize_answer(std::string_view raw, AnswerKind kind,
                                                std::string* error) {
  try {
    return normalize_answer(raw, kind);
  } catch (const AnswerFormatError& e) {
    if (error) *error = e.what();
    return std::nullopt;
  }
}

}  // namespace ttc
