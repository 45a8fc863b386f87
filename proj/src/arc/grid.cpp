#include "ttc/arc/grid.hpp"

#include <string>

namespace ttc::arc {

namespace {

void check_dims(int h, int w) {
  if (h < 1 || w < 1 || h > Grid::kMaxSide || w > Grid::kMaxSide) {
    throw GridError("grid dimensions " + std::to_string(h) + "x" + std::to_string(w) +
                    " outside 1..30");
  }
}

void check_color(int color) {
  if (color < 0 || color >= Grid::kColors) {
    throw GridError("color " + std::to_string(color) + " outside 0..9");
  }
}

}  // namespace

Grid::Grid(int height, int width, std::uint8_t fill) : height_(height), width_(width) {
  check_dims(height, width);
  check_color(fill);
  cells_.assign(static_cast<std::size_t>(height * width), fill);
}

Grid Grid::from_rows(const std::vector<std::vector<int>>& rows) {
  if (rows.empty() || rows.front().empty()) throw GridError("empty grid");
  const auto w = rows.front().size();
  for (const auto& row : rows) {
    if (row.size() != w) throw GridError("ragged row");
  }
  Grid g(static_cast<int>(rows.size()), static_cast<int>(w));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      check_color(rows[r][c]);
      g.set(static_cast<int>(r), static_cast<int>(c), static_cast<std::uint8_t>(rows[r][c]));
    }
  }
  return g;
}

Grid Grid::from_text(std::string_view text) {
  std::vector<std::vector<int>> rows;
  std::vector<int> current;
  auto flush = [&] {
    if (!current.empty()) rows.push_back(std::move(current));
    current.clear();
  };
  for (char ch : text) {
    if (ch == '\n' || ch == '|') {
      flush();
    } else if (ch >= '0' && ch <= '9') {
      current.push_back(ch - '0');
    } else if (ch == ' ' || ch == '\t' || ch == '\r') {
      continue;
    } else {
      throw GridError(std::string("unexpected character '") + ch + "' in grid text");
    }
  }
  flush();
  return from_rows(rows);
}

void Grid::set(int r, int c, std::uint8_t color) {
  check_color(color);
  cells_[static_cast<std::size_t>(r * width_ + c)] = color;
}

std::vector<std::vector<int>> Grid::rows() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(height_));
  for (int r = 0; r < height_; ++r) {
    for (int c = 0; c < width_; ++c) out[static_cast<std::size_t>(r)].push_back(at(r, c));
  }
  return out;
}

std::string Grid::to_text() const {
  std::string s;
  s.reserve(static_cast<std::size_t>(height_ * (width_ + 1)));
  for (int r = 0; r < height_; ++r) {
    if (r) s.push_back('\n');
    for (int c = 0; c < width_; ++c) s.push_back(static_cast<char>('0' + at(r, c)));
  }
  return s;
}

Grid rotate90(const Grid& g) {
  Grid out(g.width(), g.height());
  for (int r = 0; r < g.height(); ++r)
    for (int c = 0; c < g.width(); ++c) out.set(c, g.height() - 1 - r, g.at(r, c));
  return out;
}

Grid rotate180(const Grid& g) {
  Grid out(g.height(), g.width());
  for (int r = 0; r < g.height(); ++r)
    for (int c = 0; c < g.width(); ++c) out.set(g.height() - 1 - r, g.width() - 1 - c, g.at(r, c));
  return out;
}

Grid rotate270(const Grid& g) {
  Grid out(g.width(), g.height());
  for (int r = 0; r < g.height(); ++r)
    for (int c = 0; c < g.width(); ++c) out.set(g.width() - 1 - c, r, g.at(r, c));
  return out;
}

Grid flip_h(const Grid& g) {
  Grid out(g.height(), g.width());
  for (int r = 0; r < g.height(); ++r)
    for (int c = 0; c < g.width(); ++c) out.set(r, g.width() - 1 - c, g.at(r, c));
  return out;
}

Grid flip_v(const Grid& g) {
  Grid out(g.height(), g.width());
  for (int r = 0; r < g.height(); ++r)
    for (int c = 0; c < g.width(); ++c) out.set(g.height() - 1 - r, c, g.at(r, c));
  return out;
}

Grid transpose(const Grid& g) {
  Grid out(g.width(), g.height());
  for (int r = 0; r < g.height(); ++r)
    for (int c = 0; c < g.width(); ++c) out.set(c, r, g.at(r, c));
  return out;
}

}  // namespace ttc::arc
