#include "eur/textio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "eur/states.hpp"

namespace eur {

ParseError::ParseError(std::size_t l, std::size_t c, const std::string& what)
    : Error(fmt::format("{}:{}: {}", l, c, what)), line(l), column(c) {}

namespace {

// Recursive-descent evaluator for parse_real.
class ExprParser {
 public:
  ExprParser(std::string_view s, std::size_t column) : s_(s), col0_(column) {}

  double run() {
    const double v = expr();
    skip_ws();
    if (pos_ != s_.size()) fail(fmt::format("unexpected '{}'", s_[pos_]));
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(1, col0_ + pos_, what); }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool eat_word(std::string_view w) {
    skip_ws();
    if (s_.substr(pos_, w.size()) == w) {
      pos_ += w.size();
      return true;
    }
    return false;
  }

  double expr() {
    double v = term();
    for (;;) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }

  double term() {
    double v = unary();
    for (;;) {
      if (eat('*')) v *= unary();
      else if (eat('/')) v /= unary();
      else return v;
    }
  }

  double unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return primary();
  }

  double primary() {
    skip_ws();
    if (eat('(')) {
      const double v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (eat_word("sqrt")) {
      if (!eat('(')) fail("expected '(' after sqrt");
      const double v = expr();
      if (!eat(')')) fail("expected ')'");
      return std::sqrt(v);
    }
    if (eat_word("pi")) return std::numbers::pi;
    if (pos_ >= s_.size()) fail("expected a number");
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc()) fail("expected a number");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    if (s_.substr(pos_, 2) == "pi") {
      pos_ += 2;
      v *= std::numbers::pi;
    }
    return v;
  }

  std::string_view s_;
  std::size_t col0_;
  std::size_t pos_ = 0;
};

// Parses one complex token; on failure returns the offending offset.
bool parse_complex_token(std::string_view tok, cplx& out, std::size_t& bad) {
  auto number = [&](std::size_t& p, double& v) {
    const auto [ptr, ec] = std::from_chars(tok.data() + p, tok.data() + tok.size(), v);
    if (ec != std::errc()) return false;
    p = static_cast<std::size_t>(ptr - tok.data());
    return true;
  };
  std::size_t p = 0;
  if (p < tok.size() && tok[p] == '+') ++p;
  double re = 0.0;
  if (!number(p, re)) {
    // bare imaginary unit: i, -i, +i
    const std::string_view rest = tok.substr(tok[0] == '-' || tok[0] == '+' ? 1 : 0);
    if (rest == "i") {
      out = cplx(0.0, tok[0] == '-' ? -1.0 : 1.0);
      return true;
    }
    bad = p;
    return false;
  }
  if (p == tok.size()) {
    out = cplx(re, 0.0);
    return true;
  }
  if (tok[p] == 'i' && p + 1 == tok.size()) {
    out = cplx(0.0, re);
    return true;
  }
  if (tok[p] != '+' && tok[p] != '-') {
    bad = p;
    return false;
  }
  const double sign = tok[p] == '-' ? -1.0 : 1.0;
  ++p;
  double im = 1.0;
  if (p < tok.size() && tok[p] != 'i' && !number(p, im)) {
    bad = p;
    return false;
  }
  if (p + 1 != tok.size() || tok[p] != 'i') {
    bad = p;
    return false;
  }
  out = cplx(re, sign * im);
  return true;
}

struct BundledEntry {
  std::string_view name;
  std::string_view text;
};

// Quoted digit-for-digit; the same text ships under data/observables/.
constexpr BundledEntry kBundled[] = {
    {"X1", "0.272007 0.0483473+0.584816i\n0.0483473-0.584816i 0.246297\n"},
    {"Z1", "0.43916 0.857154+0.976248i\n0.857154-0.976248i 0.515329\n"},
    {"X2",
     "0.246301 0.267394+0.627628i 0.155311+0.270053i\n"
     "0.267394-0.627628i 0.752065 0.231887+0.500147i\n"
     "0.155311-0.270053i 0.231887-0.500147i 0.94377\n"},
    {"Z2",
     "0.586665 0.146795+0.957852i 0.687252+0.677623i\n"
     "0.146795-0.957852i 0.709581 0.405322+0.525615i\n"
     "0.687252-0.677623i 0.405322-0.525615i 0.901804\n"},
    {"X3", "0.826411 0.443371+0.745704i\n0.443371-0.745704i 0.459166\n"},
    {"Z3", "0.832848 0.191194+0.608568i\n0.191194-0.608568i 0.509301\n"},
    {"X4", "0.370786 0.344509+0.694499i\n0.344509-0.694499i 0.60978\n"},
    {"Z4", "0.303997 0.332044+0.448198i\n0.332044-0.448198i 0.342387\n"},
};

}  // namespace

double parse_real(std::string_view text, std::size_t column) { return ExprParser(text, column).run(); }

Matrix parse_matrix_text(std::string_view text) {
  std::vector<cplx> entries;
  std::size_t line = 1, col = 1, i = 0;
  std::size_t last_line = 1, last_col = 1;
  while (i < text.size()) {
    const char ch = text[i];
    if (ch == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (ch == ' ' || ch == '\t' || ch == '\r' || ch == ',') {
      ++col;
      ++i;
      continue;
    }
    if (ch == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < text.size() && text[i] != ' ' && text[i] != '\t' && text[i] != '\r' && text[i] != '\n' && text[i] != ',' &&
           text[i] != '#')
      ++i;
    const std::string_view tok = text.substr(start, i - start);
    cplx z;
    std::size_t bad = 0;
    if (!parse_complex_token(tok, z, bad)) {
      throw ParseError(line, col + bad, fmt::format("malformed complex entry '{}'", tok));
    }
    entries.push_back(z);
    last_line = line;
    last_col = col;
    col += tok.size();
  }
  if (entries.empty()) throw ParseError(line, col, "no matrix entries");
  const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(entries.size()))));
  if (side * side != entries.size()) {
    throw ParseError(last_line, last_col, fmt::format("{} entries do not form a square matrix", entries.size()));
  }
  return Matrix(side, side, std::move(entries));
}

Matrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_matrix_text(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(e.line, e.column, fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::string format_matrix_text(const Matrix& m) {
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const cplx z = m(r, c);
      out += fmt::format("{}{:.17g}{:+.17g}i", c ? " " : "", z.real(), z.imag());
    }
    out += '\n';
  }
  return out;
}

std::string_view bundled_observable_text(std::string_view name) {
  for (const auto& e : kBundled)
    if (e.name == name) return e.text;
  throw Error(fmt::format("no bundled observable named '{}'", name));
}

Matrix bundled_observable(std::string_view name) { return parse_matrix_text(bundled_observable_text(name)); }

DensityMatrix parse_state_spec(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string_view::npos || colon == 0) throw ParseError(1, 1, "expected 'family:key=value,...'");
  const std::string family(spec.substr(0, colon));

  std::map<std::string, double, std::less<>> values;
  std::map<std::string, std::size_t, std::less<>> columns;
  std::string path;
  std::size_t pos = colon + 1;
  while (pos < spec.size()) {
    std::size_t end = spec.find(',', pos);
    if (end == std::string_view::npos) end = spec.size();
    const std::string_view item = spec.substr(pos, end - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) throw ParseError(1, pos + 1, fmt::format("expected key=value, got '{}'", item));
    const std::string key(item.substr(0, eq));
    if (values.contains(key) || (key == "path" && !path.empty())) throw ParseError(1, pos + 1, fmt::format("duplicate key '{}'", key));
    if (family == "file" && key == "path") {
      path = std::string(item.substr(eq + 1));
    } else {
      values[key] = parse_real(item.substr(eq + 1), pos + eq + 2);
      columns[key] = pos + 1;
    }
    pos = end + 1;
  }

  static const std::map<std::string, std::vector<std::string>, std::less<>> kKeys = {
      {"werner", {"d", "f"}},
      {"isotropic", {"d", "f"}},
      {"bell", {"c1", "c2", "c3"}},
      {"qubit-qutrit", {"alpha", "gamma"}},
      {"qubit-ququart", {"alpha", "gamma"}},
      {"bell-like", {"alpha"}},
      {"bell-mixture", {"w1p", "w1m", "w2p", "w2m"}},
      {"mixed", {"da", "db"}},
      {"file", {"da", "db"}},
  };
  const auto fam = kKeys.find(family);
  if (fam == kKeys.end()) throw ParseError(1, 1, fmt::format("unknown state family '{}'", family));
  for (const auto& [key, col] : columns) {
    if (std::find(fam->second.begin(), fam->second.end(), key) == fam->second.end()) {
      throw ParseError(1, col, fmt::format("unknown key '{}' for '{}'", key, family));
    }
  }

  auto get = [&](const char* key) {
    const auto it = values.find(key);
    if (it == values.end()) throw ParseError(1, colon + 2, fmt::format("'{}' requires {}=", family, key));
    return it->second;
  };
  auto get_int = [&](const char* key) {
    const double v = get(key);
    if (v != std::floor(v) || v < 1) throw ParseError(1, columns[key], fmt::format("{} must be a positive integer", key));
    return static_cast<int>(v);
  };

  if (family == "werner") return werner(get_int("d"), get("f"));
  if (family == "isotropic") return isotropic(get_int("d"), get("f"));
  if (family == "bell") return bell_diagonal({get("c1"), get("c2"), get("c3")});
  if (family == "qubit-qutrit") return qubit_qudit(QubitQuditParams::from_alpha_gamma(QuditKind::qutrit, get("alpha"), get("gamma")));
  if (family == "qubit-ququart") return qubit_qudit(QubitQuditParams::from_alpha_gamma(QuditKind::ququart, get("alpha"), get("gamma")));
  if (family == "bell-like") return bell_like(get("alpha"));
  if (family == "bell-mixture") return bell_mixture({get("w1p"), get("w1m"), get("w2p"), get("w2m")});
  const auto da = static_cast<std::size_t>(get_int("da")), db = static_cast<std::size_t>(get_int("db"));
  if (family == "mixed") return validate_density(Matrix::identity(da * db) * (1.0 / static_cast<double>(da * db)), {da, db});
  if (path.empty()) throw ParseError(1, colon + 2, "'file' requires path=");
  return validate_density(read_matrix_file(path), {da, db});
}

}  // namespace eur
