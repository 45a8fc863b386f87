#include "ttc/arc/dsl.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

namespace ttc::arc {

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

// Returns an error message, or empty when the op's literals are valid at position `index`.
std::string validate_op(const DslOp& o, std::size_t index) {
  auto in = [](int v, int lo, int hi) { return v >= lo && v <= hi; };
  return std::visit(
      Overloaded{
          [&](const op::Recolor& x) -> std::string {
            bool any = false;
            for (auto v : x.map) {
              if (v != -1 && !in(v, 0, 9)) return "recolor target outside 0..9";
              any = any || v != -1;
            }
            return any ? "" : "recolor needs at least one mapping";
          },
          [&](const op::Crop& x) -> std::string {
            if (!in(x.r0, 0, 29) || !in(x.c0, 0, 29)) return "crop origin outside 0..29";
            if (!in(x.h, 1, 30) || !in(x.w, 1, 30)) return "crop size outside 1..30";
            return "";
          },
          [&](const op::Pad& x) -> std::string {
            if (!in(x.color, 0, 9)) return "pad color outside 0..9";
            if (!in(x.top, 0, 29) || !in(x.bottom, 0, 29) || !in(x.left, 0, 29) || !in(x.right, 0, 29))
              return "pad width outside 0..29";
            return "";
          },
          [&](const op::Translate& x) -> std::string {
            if (!in(x.dr, -29, 29) || !in(x.dc, -29, 29)) return "translate offset outside -29..29";
            if (!in(x.fill, 0, 9)) return "translate fill outside 0..9";
            return "";
          },
          [&](const op::Tile& x) -> std::string {
            if (!in(x.ry, 1, 30) || !in(x.rx, 1, 30)) return "tile factor outside 1..30";
            return "";
          },
          [&](const op::OverlayNonzero& x) -> std::string {
            if (x.slot < 0 || static_cast<std::size_t>(x.slot) > index)
              return "overlay_nonzero slot must name an earlier result (0.." + std::to_string(index) + ")";
            return "";
          },
          [](const auto&) -> std::string { return ""; },
      },
      o);
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  DslProgram parse() {
    std::vector<DslOp> ops;
    skip_blank(true);
    while (!at_end()) {
      const int line = line_, col = col_;
      auto o = parse_op();
      if (ops.size() >= DslProgram::kMaxOps) {
        throw DslSyntaxError("program longer than 64 ops", line, col);
      }
      if (auto err = validate_op(o, ops.size()); !err.empty()) throw DslSyntaxError(err, line, col);
      ops.push_back(std::move(o));
      skip_blank(false);
      if (at_end()) break;
      if (peek() == ';' || peek() == '\n') {
        advance();
        skip_blank(true);
        continue;
      }
      fail(std::string("expected ';' or newline, found '") + peek() + "'");
    }
    return DslProgram(std::move(ops));
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw DslSyntaxError(msg, line_, col_); }

  // Skips spaces and comments; newlines and ';' too when `separators`.
  void skip_blank(bool separators) {
    while (!at_end()) {
      const char c = peek();
      if (c == '#') {
        while (!at_end() && peek() != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || (separators && (c == '\n' || c == ';'))) {
        advance();
      } else {
        break;
      }
    }
  }
  void skip_spaces() {
    while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r' || peek() == '\n')) advance();
  }

  void expect(char c) {
    skip_spaces();
    if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
    advance();
  }

  int parse_int() {
    skip_spaces();
    bool negative = false;
    if (!at_end() && (peek() == '-' || peek() == '+')) {
      negative = peek() == '-';
      advance();
    }
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer literal");
    long value = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      value = value * 10 + (peek() - '0');
      if (value > 1000) fail("integer literal out of range");
      advance();
    }
    return static_cast<int>(negative ? -value : value);
  }

  std::vector<int> parse_int_args(const std::string& name, std::size_t arity) {
    expect('(');
    std::vector<int> args;
    skip_spaces();
    if (!at_end() && peek() == ')') {
      advance();
    } else {
      for (;;) {
        args.push_back(parse_int());
        skip_spaces();
        if (!at_end() && peek() == ',') {
          advance();
          continue;
        }
        expect(')');
        break;
      }
    }
    if (args.size() != arity) {
      fail(name + " takes " + std::to_string(arity) + " arguments, got " + std::to_string(args.size()));
    }
    return args;
  }

  op::Recolor parse_recolor() {
    expect('(');
    op::Recolor r;
    for (;;) {
      const int from = parse_int();
      skip_spaces();
      if (text_.substr(pos_, 2) != "->") fail("expected '->' in recolor mapping");
      advance();
      advance();
      const int to = parse_int();
      if (from < 0 || from > 9 || to < 0 || to > 9) fail("recolor color outside 0..9");
      if (r.map[static_cast<std::size_t>(from)] != -1) fail("duplicate recolor source " + std::to_string(from));
      r.map[static_cast<std::size_t>(from)] = static_cast<std::int8_t>(to);
      skip_spaces();
      if (!at_end() && peek() == ',') {
        advance();
        continue;
      }
      expect(')');
      return r;
    }
  }

  DslOp parse_op() {
    const int line = line_, col = col_;
    std::string name;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
      name.push_back(peek());
      advance();
    }
    if (name.empty()) fail(std::string("expected op name, found '") + peek() + "'");
    auto no_args = [&]() {
      skip_blank(false);
      if (!at_end() && peek() == '(') fail(name + " takes no arguments");
    };
    if (name == "rotate90") return no_args(), op::Rotate90{};
    if (name == "rotate180") return no_args(), op::Rotate180{};
    if (name == "rotate270") return no_args(), op::Rotate270{};
    if (name == "flip_h") return no_args(), op::FlipH{};
    if (name == "flip_v") return no_args(), op::FlipV{};
    if (name == "transpose") return no_args(), op::Transpose{};
    if (name == "identity") return no_args(), op::Identity{};
    if (name == "recolor") return parse_recolor();
    if (name == "crop") {
      const auto a = parse_int_args(name, 4);
      return op::Crop{a[0], a[1], a[2], a[3]};
    }
    if (name == "pad") {
      const auto a = parse_int_args(name, 5);
      return op::Pad{a[0], a[1], a[2], a[3], a[4]};
    }
    if (name == "translate") {
      const auto a = parse_int_args(name, 3);
      return op::Translate{a[0], a[1], a[2]};
    }
    if (name == "tile") {
      const auto a = parse_int_args(name, 2);
      return op::Tile{a[0], a[1]};
    }
    if (name == "overlay_nonzero") {
      const auto a = parse_int_args(name, 1);
      return op::OverlayNonzero{a[0]};
    }
    throw DslSyntaxError("unknown op '" + name + "'", line, col);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace

DslProgram::DslProgram(std::vector<DslOp> ops) : ops_(std::move(ops)) {
  if (ops_.size() > kMaxOps) throw DslSyntaxError("program longer than 64 ops", 0, 0);
  for (std::size_t i = 0; i < ops_.size(); ++i) {
    if (auto err = validate_op(ops_[i], i); !err.empty()) throw DslSyntaxError(err, 0, 0);
  }
}

bool DslProgram::pure_geometry() const {
  for (const auto& o : ops_) {
    const bool geo = std::holds_alternative<op::Rotate90>(o) || std::holds_alternative<op::Rotate180>(o) ||
                     std::holds_alternative<op::Rotate270>(o) || std::holds_alternative<op::FlipH>(o) ||
                     std::holds_alternative<op::FlipV>(o) || std::holds_alternative<op::Transpose>(o) ||
                     std::holds_alternative<op::Identity>(o);
    if (!geo) return false;
  }
  return true;
}

DslProgram parse_dsl(std::string_view text) { return Parser(text).parse(); }

std::string print_op(const DslOp& o) {
  return std::visit(
      Overloaded{
          [](const op::Rotate90&) -> std::string { return "rotate90"; },
          [](const op::Rotate180&) -> std::string { return "rotate180"; },
          [](const op::Rotate270&) -> std::string { return "rotate270"; },
          [](const op::FlipH&) -> std::string { return "flip_h"; },
          [](const op::FlipV&) -> std::string { return "flip_v"; },
          [](const op::Transpose&) -> std::string { return "transpose"; },
          [](const op::Identity&) -> std::string { return "identity"; },
          [](const op::Recolor& r) {
            std::ostringstream s;
            s << "recolor(";
            bool first = true;
            for (int c = 0; c < 10; ++c) {
              if (r.map[static_cast<std::size_t>(c)] == -1) continue;
              if (!first) s << ", ";
              s << c << "->" << int(r.map[static_cast<std::size_t>(c)]);
              first = false;
            }
            s << ")";
            return s.str();
          },
          [](const op::Crop& x) {
            return "crop(" + std::to_string(x.r0) + ", " + std::to_string(x.c0) + ", " +
                   std::to_string(x.h) + ", " + std::to_string(x.w) + ")";
          },
          [](const op::Pad& x) {
            return "pad(" + std::to_string(x.color) + ", " + std::to_string(x.top) + ", " +
                   std::to_string(x.bottom) + ", " + std::to_string(x.left) + ", " +
                   std::to_string(x.right) + ")";
          },
          [](const op::Translate& x) {
            return "translate(" + std::to_string(x.dr) + ", " + std::to_string(x.dc) + ", " +
                   std::to_string(x.fill) + ")";
          },
          [](const op::Tile& x) { return "tile(" + std::to_string(x.ry) + ", " + std::to_string(x.rx) + ")"; },
          [](const op::OverlayNonzero& x) { return "overlay_nonzero(" + std::to_string(x.slot) + ")"; },
      },
      o);
}

std::string print_dsl(const DslProgram& program) {
  std::string out;
  for (std::size_t i = 0; i < program.ops().size(); ++i) {
    if (i) out += "; ";
    out += print_op(program.ops()[i]);
  }
  return out;
}

namespace {

void check_result_size(int h, int w, const char* op_name) {
  if (h < 1 || w < 1 || h > Grid::kMaxSide || w > Grid::kMaxSide) {
    throw DslEvalError(std::string(op_name) + " would produce a " + std::to_string(h) + "x" +
                       std::to_string(w) + " grid");
  }
}

}  // namespace

Grid apply_op(const DslOp& o, const Grid& g, const std::vector<Grid>& slots) {
  return std::visit(
      Overloaded{
          [&](const op::Rotate90&) { return rotate90(g); },
          [&](const op::Rotate180&) { return rotate180(g); },
          [&](const op::Rotate270&) { return rotate270(g); },
          [&](const op::FlipH&) { return flip_h(g); },
          [&](const op::FlipV&) { return flip_v(g); },
          [&](const op::Transpose&) { return transpose(g); },
          [&](const op::Identity&) { return g; },
          [&](const op::Recolor& r) {
            Grid out = g;
            for (int y = 0; y < g.height(); ++y)
              for (int x = 0; x < g.width(); ++x) {
                const auto to = r.map[g.at(y, x)];
                if (to != -1) out.set(y, x, static_cast<std::uint8_t>(to));
              }
            return out;
          },
          [&](const op::Crop& c) {
            if (c.r0 + c.h > g.height() || c.c0 + c.w > g.width()) {
              throw DslEvalError("crop(" + std::to_string(c.r0) + ", " + std::to_string(c.c0) + ", " +
                                 std::to_string(c.h) + ", " + std::to_string(c.w) + ") outside " +
                                 std::to_string(g.height()) + "x" + std::to_string(g.width()) + " grid");
            }
            Grid out(c.h, c.w);
            for (int y = 0; y < c.h; ++y)
              for (int x = 0; x < c.w; ++x) out.set(y, x, g.at(c.r0 + y, c.c0 + x));
            return out;
          },
          [&](const op::Pad& p) {
            const int h = g.height() + p.top + p.bottom, w = g.width() + p.left + p.right;
            check_result_size(h, w, "pad");
            Grid out(h, w, static_cast<std::uint8_t>(p.color));
            for (int y = 0; y < g.height(); ++y)
              for (int x = 0; x < g.width(); ++x) out.set(y + p.top, x + p.left, g.at(y, x));
            return out;
          },
          [&](const op::Translate& t) {
            if (std::abs(t.dr) >= g.height() || std::abs(t.dc) >= g.width()) {
              throw DslEvalError("translate(" + std::to_string(t.dr) + ", " + std::to_string(t.dc) +
                                 ") moves all content outside the grid");
            }
            Grid out(g.height(), g.width(), static_cast<std::uint8_t>(t.fill));
            for (int y = 0; y < g.height(); ++y)
              for (int x = 0; x < g.width(); ++x) {
                const int ny = y + t.dr, nx = x + t.dc;
                if (ny >= 0 && ny < g.height() && nx >= 0 && nx < g.width()) out.set(ny, nx, g.at(y, x));
              }
            return out;
          },
          [&](const op::Tile& t) {
            const int h = g.height() * t.ry, w = g.width() * t.rx;
            check_result_size(h, w, "tile");
            Grid out(h, w);
            for (int y = 0; y < h; ++y)
              for (int x = 0; x < w; ++x) out.set(y, x, g.at(y % g.height(), x % g.width()));
            return out;
          },
          [&](const op::OverlayNonzero& o2) {
            if (o2.slot < 0 || static_cast<std::size_t>(o2.slot) >= slots.size()) {
              throw DslEvalError("overlay_nonzero slot " + std::to_string(o2.slot) + " not available");
            }
            const auto& top = slots[static_cast<std::size_t>(o2.slot)];
            if (top.height() != g.height() || top.width() != g.width()) {
              throw DslEvalError("overlay_nonzero shape mismatch");
            }
            Grid out = g;
            for (int y = 0; y < g.height(); ++y)
              for (int x = 0; x < g.width(); ++x)
                if (top.at(y, x) != 0) out.set(y, x, top.at(y, x));
            return out;
          },
      },
      o);
}

Grid eval_dsl(const DslProgram& program, const Grid& input) {
  std::vector<Grid> slots{input};
  slots.reserve(program.size() + 1);
  for (const auto& o : program.ops()) slots.push_back(apply_op(o, slots.back(), slots));
  return slots.back();
}

}  // namespace ttc::arc
