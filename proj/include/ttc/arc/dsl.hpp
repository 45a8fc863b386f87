#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ttc/arc/grid.hpp"

namespace ttc::arc {

/// Grid-transformation DSL. A program is a sequence of ops applied left to right;
/// slot 0 holds the input grid and slot k the result after op k.
///
///   rotate90 | rotate180 | rotate270     clockwise rotation
///   flip_h                               mirror left-right
///   flip_v                               mirror top-bottom
///   transpose                            main-diagonal reflection
///   identity
///   recolor(a->b, ...)                   map colors; unmapped colors unchanged
///   crop(r0, c0, h, w)                   sub-grid; must lie inside the grid
///   pad(color, top, bottom, left, right) border of `color`
///   translate(dr, dc, fill)              shift content; vacated cells take `fill`,
///                                        content must not leave the grid entirely
///   tile(ry, rx)                         repeat ry times down, rx times across
///   overlay_nonzero(slot)                paint nonzero cells of an earlier slot over
///                                        the current grid (shapes must match)
///
/// Ops are separated by ';' or newlines. `#` starts a comment.
namespace op {
struct Rotate90 {
  friend bool operator==(const Rotate90&, const Rotate90&) = default;
};
struct Rotate180 {
  friend bool operator==(const Rotate180&, const Rotate180&) = default;
};
struct Rotate270 {
  friend bool operator==(const Rotate270&, const Rotate270&) = default;
};
struct FlipH {
  friend bool operator==(const FlipH&, const FlipH&) = default;
};
struct FlipV {
  friend bool operator==(const FlipV&, const FlipV&) = default;
};
struct Transpose {
  friend bool operator==(const Transpose&, const Transpose&) = default;
};
struct Identity {
  friend bool operator==(const Identity&, const Identity&) = default;
};
struct Recolor {
  std::array<std::int8_t, 10> map{-1, -1, -1, -1, -1, -1, -1, -1, -1, -1};
  friend bool operator==(const Recolor&, const Recolor&) = default;
};
struct Crop {
  int r0, c0, h, w;
  friend bool operator==(const Crop&, const Crop&) = default;
};
struct Pad {
  int color, top, bottom, left, right;
  friend bool operator==(const Pad&, const Pad&) = default;
};
struct Translate {
  int dr, dc, fill;
  friend bool operator==(const Translate&, const Translate&) = default;
};
struct Tile {
  int ry, rx;
  friend bool operator==(const Tile&, const Tile&) = default;
};
struct OverlayNonzero {
  int slot;
  friend bool operator==(const OverlayNonzero&, const OverlayNonzero&) = default;
};
}  // namespace op

using DslOp = std::variant<op::Rotate90, op::Rotate180, op::Rotate270, op::FlipH, op::FlipV,
                           op::Transpose, op::Identity, op::Recolor, op::Crop, op::Pad,
                           op::Translate, op::Tile, op::OverlayNonzero>;

class DslProgram {
 public:
  static constexpr std::size_t kMaxOps = 64;

  DslProgram() = default;
  /// Throws DslSyntaxError when ops.size() > kMaxOps or a literal is out of range.
  explicit DslProgram(std::vector<DslOp> ops);

  const std::vector<DslOp>& ops() const { return ops_; }
  std::size_t size() const { return ops_.size(); }
  /// True when every op is one of the eight dihedral moves or identity.
  bool pure_geometry() const;

  friend bool operator==(const DslProgram& a, const DslProgram& b) { return a.ops_ == b.ops_; }

 private:
  std::vector<DslOp> ops_;
};

class DslSyntaxError : public std::runtime_error {
 public:
  DslSyntaxError(const std::string& message, int line, int column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Out-of-bounds crop/translate/overlay or a result larger than 30x30.
class DslEvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

DslProgram parse_dsl(std::string_view text);
/// Canonical form: ops joined by "; ", recolor pairs ascending by source color.
std::string print_dsl(const DslProgram& program);
std::string print_op(const DslOp& op);

Grid eval_dsl(const DslProgram& program, const Grid& input);
Grid apply_op(const DslOp& op, const Grid& g, const std::vector<Grid>& slots);

}  // namespace ttc::arc
