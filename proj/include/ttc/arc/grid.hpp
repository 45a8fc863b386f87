#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ttc::arc {

/// Raised when a grid would violate the size or color invariants.
class GridError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Row-major ARC grid: 1..30 rows and columns, colors 0..9.
class Grid {
 public:
  static constexpr int kMaxSide = 30;
  static constexpr int kColors = 10;

  Grid() = default;
  /// Filled grid; throws GridError on invalid dimensions or color.
  Grid(int height, int width, std::uint8_t fill = 0);
  /// Throws GridError on ragged rows, empty input, or colors outside 0..9.
  static Grid from_rows(const std::vector<std::vector<int>>& rows);
  /// Parses digit rows separated by newlines or '|'. Blank lines are ignored.
  static Grid from_text(std::string_view text);

  int height() const { return height_; }
  int width() const { return width_; }
  bool empty() const { return cells_.empty(); }

  std::uint8_t at(int r, int c) const { return cells_[static_cast<std::size_t>(r * width_ + c)]; }
  void set(int r, int c, std::uint8_t color);
  std::span<const std::uint8_t> cells() const { return cells_; }

  std::vector<std::vector<int>> rows() const;
  /// Digit rows joined by '\n', no trailing newline.
  std::string to_text() const;

  friend bool operator==(const Grid&, const Grid&) = default;
  friend auto operator<=>(const Grid&, const Grid&) = default;

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<std::uint8_t> cells_;
};

Grid rotate90(const Grid& g);  // clockwise
Grid rotate180(const Grid& g);
Grid rotate270(const Grid& g);
Grid flip_h(const Grid& g);  // mirror left-right
Grid flip_v(const Grid& g);  // mirror top-bottom
Grid transpose(const Grid& g);

}  // namespace ttc::arc
