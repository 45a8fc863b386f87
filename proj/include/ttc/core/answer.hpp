#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "ttc/arc/grid.hpp"

namespace ttc {

enum class AnswerKind { choice, text, integer, grid };

std::string_view to_string(AnswerKind kind);
/// Throws ConfigError for unknown names.
AnswerKind answer_kind_from_string(std::string_view name);

/// A normalized answer. Construct through normalize_answer or the typed factories.
class AnswerValue {
 public:
  using Payload = std::variant<std::string, std::int64_t, arc::Grid>;

  static AnswerValue choice(char letter);
  static AnswerValue text(std::string normalized);
  static AnswerValue integer(std::int64_t value);
  static AnswerValue grid(arc::Grid g);

  AnswerKind kind() const { return kind_; }
  const Payload& payload() const { return payload_; }

  const std::string& as_string() const { return std::get<std::string>(payload_); }
  std::int64_t as_integer() const { return std::get<std::int64_t>(payload_); }
  const arc::Grid& as_grid() const { return std::get<arc::Grid>(payload_); }

  /// Canonical text form; normalize_answer(canonical(), kind()) reproduces this value.
  /// Lexicographic order on this string is the tie-break order used by every selector.
  std::string canonical() const;

  friend bool operator==(const AnswerValue&, const AnswerValue&) = default;

 private:
  AnswerValue(AnswerKind kind, Payload payload) : kind_(kind), payload_(std::move(payload)) {}
  AnswerKind kind_ = AnswerKind::text;
  Payload payload_;
};

/// Deterministic, idempotent normalization:
///   choice  -> single uppercase letter (surrounding brackets and a trailing period dropped)
///   text    -> trimmed, internal whitespace collapsed, ASCII case-folded
///   integer -> first signed decimal literal in the string
///   grid    -> digit rows ("10|01", newline separated, or JSON-style [[1,0],[0,1]])
/// Throws AnswerFormatError when `raw` cannot be read as `kind`.
AnswerValue normalize_answer(std::string_view raw, AnswerKind kind);

/// Non-throwing variant; the error message is returned in `error` when set.
std::optional<AnswerValue> try_normalize_answer(std::string_view raw, AnswerKind kind,
                                                std::string* error = nullptr);

}  // namespace ttc
