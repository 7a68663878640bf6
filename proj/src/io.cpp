#include "wcc/io.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <string_view>
#include <sstream>

namespace wcc::io {

ParseError::ParseError(const std::string& what, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      detail_(what),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string text;
  int line = 0;
  int column = 0;
};

class Lexer {
 public:
  explicit Lexer(std::istream& in) {
    std::string row;
    int line = 0;
    while (std::getline(in, row)) {
      ++line;
      std::size_t i = 0;
      while (i < row.size()) {
        if (std::isspace(static_cast<unsigned char>(row[i]))) {
          ++i;
          continue;
        }
        const std::size_t start = i;
        while (i < row.size() && !std::isspace(static_cast<unsigned char>(row[i]))) ++i;
        tokens_.push_back({row.substr(start, i - start), line, static_cast<int>(start) + 1});
      }
    }
    last_line_ = line;
  }

  const Token& next(const char* what) {
    if (pos_ >= tokens_.size()) throw ParseError(std::string("expected ") + what + ", found end of input", last_line_ + 1, 1);
    return tokens_[pos_++];
  }

  std::int64_t integer(const char* what, std::int64_t lo, std::int64_t hi) {
    const Token& t = next(what);
    std::int64_t v = 0;
    auto [end, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || end != t.text.data() + t.text.size())
      throw ParseError(std::string("expected ") + what + ", found '" + t.text + "'", t.line, t.column);
    if (v < lo || v > hi)
      throw ParseError(std::string(what) + " " + t.text + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]",
                       t.line, t.column);
    return v;
  }

  int small(const char* what, int lo, int hi) { return static_cast<int>(integer(what, lo, hi)); }

  /// Every row must sit on its own line; this catches short or long rows.
  void expect_row_start(int row_line) const {
    if (pos_ < tokens_.size() && tokens_[pos_].line == row_line)
      throw ParseError("too many entries on line", tokens_[pos_].line, tokens_[pos_].column);
  }

  int line_of_next() const { return pos_ < tokens_.size() ? tokens_[pos_].line : last_line_ + 1; }

  void finish() const {
    if (pos_ < tokens_.size())
      throw ParseError("unexpected trailing content '" + tokens_[pos_].text + "'", tokens_[pos_].line,
                       tokens_[pos_].column);
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int last_line_ = 0;
};

/// rows x cols entries, each row on a line of its own.
template <class Read>
void read_rows(Lexer& lex, int rows, int cols, Read read) {
  for (int x = 0; x < rows; ++x) {
    const int line = lex.line_of_next();
    for (int y = 0; y < cols; ++y) {
      if (y > 0 && lex.line_of_next() != line)
        throw ParseError("row has " + std::to_string(y) + " entries, expected " + std::to_string(cols), line, 1);
      read(x, y);
    }
    lex.expect_row_start(line);
  }
}

bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && end == s.data() + s.size();
}

std::optional<Complex> parse_complex(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s.back() != 'i') {
    double re = 0.0;
    if (!parse_double(s, re)) return std::nullopt;
    return Complex(re, 0.0);
  }
  s.remove_suffix(1);
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = s.size(); i-- > 1;)
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  std::string_view re_part = split == std::string_view::npos ? std::string_view() : s.substr(0, split);
  std::string_view im_part = split == std::string_view::npos ? s : s.substr(split);
  double re = 0.0, im = 0.0;
  if (!re_part.empty() && !parse_double(re_part, re)) return std::nullopt;
  if (im_part.empty() || im_part == "+")
    im = 1.0;
  else if (im_part == "-")
    im = -1.0;
  else if (!parse_double(im_part, im))
    return std::nullopt;
  return Complex(re, im);
}

std::optional<Root> parse_root(std::string_view s) {
  if (!s.starts_with("R:")) return std::nullopt;
  s.remove_prefix(2);
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return std::nullopt;
  std::int64_t k = 0, m = 0;
  auto a = std::from_chars(s.data(), s.data() + slash, k);
  auto b = std::from_chars(s.data() + slash + 1, s.data() + s.size(), m);
  if (a.ec != std::errc() || a.ptr != s.data() + slash || b.ec != std::errc() || b.ptr != s.data() + s.size() ||
      m < 1)
    return std::nullopt;
  return Root(k, m);
}

std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

}  // namespace

Configuration parse_scheme(std::istream& in) {
  Lexer lex(in);
  const int n = lex.small("point count", 1, 1 << 12);
  const int r = lex.small("class count", 1, n * n);
  lex.expect_row_start(1);
  Configuration cfg{n, r, std::vector<int>(static_cast<std::size_t>(n) * n)};
  read_rows(lex, n, n, [&](int x, int y) { cfg.color[static_cast<std::size_t>(x) * n + y] = lex.small("class index", 0, r - 1); });
  lex.finish();
  return cfg;
}

FiniteGroup parse_group(std::istream& in) {
  Lexer lex(in);
  const int n = lex.small("group order", 1, 1 << 12);
  lex.expect_row_start(1);
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  read_rows(lex, n, n, [&](int x, int y) { table[x][y] = lex.small("element", 0, n - 1); });
  lex.finish();
  return FiniteGroup::from_table(std::move(table));
}

PermGroupSpec parse_permgroup(std::istream& in) {
  Lexer lex(in);
  PermGroupSpec spec;
  spec.degree = lex.small("degree", 1, 1 << 12);
  const int k = lex.small("generator count", 0, 1 << 12);
  lex.expect_row_start(1);
  spec.generators.assign(k, Permutation(spec.degree));
  read_rows(lex, k, spec.degree, [&](int g, int x) { spec.generators[g][x] = lex.small("image", 0, spec.degree - 1); });
  lex.finish();
  return spec;
}

WeightMatrix parse_weight(std::istream& in, double eps) {
  Lexer lex(in);
  const int n = lex.small("size", 1, 1 << 12);
  lex.expect_row_start(1);
  std::vector<Complex> values(static_cast<std::size_t>(n) * n);
  std::vector<ExactEntry> exact(values.size());
  bool all_exact = true;
  read_rows(lex, n, n, [&](int x, int y) {
    const Token& t = lex.next("weight entry");
    const std::size_t i = static_cast<std::size_t>(x) * n + y;
    if (t.text == "0") return;
    if (auto root = parse_root(t.text)) {
      exact[i] = {true, *root};
      values[i] = root->value();
      return;
    }
    if (t.text.starts_with("R:")) throw ParseError("malformed root '" + t.text + "', expected R:k/m", t.line, t.column);
    auto z = parse_complex(t.text);
    if (!z) throw ParseError("malformed entry '" + t.text + "', expected 0, a+bi or R:k/m", t.line, t.column);
    values[i] = *z;
    all_exact = false;
  });
  lex.finish();
  if (all_exact) return WeightMatrix::from_exact(n, std::move(exact), eps);
  return WeightMatrix::from_values(n, std::move(values), eps);
}

RootCocycle parse_cocycle(std::istream& in, const FiniteGroup& g) {
  Lexer lex(in);
  const int n = lex.small("group order", g.order(), g.order());
  const std::int64_t m = lex.integer("modulus", 1, std::int64_t{1} << 40);
  lex.expect_row_start(1);
  std::vector<std::int64_t> k(static_cast<std::size_t>(n) * n);
  read_rows(lex, n, n, [&](int x, int y) { k[static_cast<std::size_t>(x) * n + y] = lex.integer("exponent", 0, m - 1); });
  lex.finish();
  return RootCocycle(g, m, std::move(k));
}

CharacterSpec parse_character(std::istream& in) {
  Lexer lex(in);
  CharacterSpec spec;
  const int l = lex.small("subgroup order", 1, 1 << 12);
  spec.phi.m = lex.integer("modulus", 1, std::int64_t{1} << 40);
  lex.expect_row_start(1);
  spec.subgroup.resize(l);
  spec.phi.k.resize(l);
  read_rows(lex, 1, l, [&](int, int i) { spec.subgroup[i] = lex.small("element", 0, 1 << 20); });
  read_rows(lex, 1, l, [&](int, int i) { spec.phi.k[i] = lex.integer("exponent", 0, spec.phi.m - 1); });
  lex.finish();
  return spec;
}

std::string format_scheme(const Configuration& cfg) {
  std::ostringstream out;
  out << cfg.n << ' ' << cfg.r << '\n';
  for (int x = 0; x < cfg.n; ++x)
    for (int y = 0; y < cfg.n; ++y) out << cfg.at(x, y) << (y + 1 == cfg.n ? '\n' : ' ');
  return out.str();
}

std::string format_group(const FiniteGroup& g) {
  std::ostringstream out;
  out << g.order() << '\n';
  for (int x = 0; x < g.order(); ++x)
    for (int y = 0; y < g.order(); ++y) out << g.mul(x, y) << (y + 1 == g.order() ? '\n' : ' ');
  return out.str();
}

std::string format_complex(Complex z) {
  std::string s = shortest(z.real());
  if (z.imag() != 0.0) {
    const std::string im = shortest(z.imag());
    s += (im.front() == '-' ? "" : "+") + im + "i";
  }
  return s;
}

std::string weight_token(const WeightMatrix& w, int x, int y) {
  if (w.is_exact()) {
    const auto& e = w.exact(x, y);
    if (!e.nonzero) return "0";
    return "R:" + std::to_string(e.root.k) + "/" + std::to_string(e.root.m);
  }
  const Complex z = w(x, y);
  if (z == Complex(0.0, 0.0)) return "0";
  return format_complex(z);
}

std::string format_weight(const WeightMatrix& w) {
  std::ostringstream out;
  out << w.size() << '\n';
  for (int x = 0; x < w.size(); ++x)
    for (int y = 0; y < w.size(); ++y) out << weight_token(w, x, y) << (y + 1 == w.size() ? '\n' : ' ');
  return out.str();
}

std::string format_cocycle(const RootCocycle& a) {
  std::ostringstream out;
  out << a.n() << ' ' << a.m << '\n';
  for (int x = 0; x < a.n(); ++x)
    for (int y = 0; y < a.n(); ++y) out << a.at(x, y) << (y + 1 == a.n() ? '\n' : ' ');
  return out.str();
}

}  // namespace wcc::io
