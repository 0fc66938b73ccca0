#pragma once

// Line-oriented text formats.
//
//   PFES 1 N=<int> k=<int> B=<int> CB=<int>     coefficient table header
//   EPS=+1 | EPS=-1                             optional Fricke sign
//   LAMBDA p=<p> <num/den>                      optional eigenvalue, repeatable
//   OP <text>                                   provenance, repeatable
//   <n> <r> <mN> <num/den>                      one record per coefficient
//
//   QSER 1 k=<k> half=<0|1> level=<L> bound=<B> char=<spec>
//   <D> <num/den>
//
//   JSLICE 1 m=<m> k=<k> bound=<B> zero=<0|1>
//   <n> <r> <num/den>
//
// '#' starts a comment. Parsing accepts records in any order and unreduced
// fractions; serialization always writes the canonical form.

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pfes/fourier.hpp"
#include "pfes/halfint.hpp"

namespace pfes {

namespace io_detail {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;
  std::vector<Token> tokens;
  std::string raw;
};

/// Splits text into non-empty, comment-stripped lines of whitespace tokens.
inline std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0, start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    Line l{number, {}, std::string(line)};
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      if (i >= line.size()) break;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
      l.tokens.push_back({std::string(line.substr(i, j - i)), i + 1});
      i = j;
    }
    if (!l.tokens.empty()) out.push_back(std::move(l));
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

[[noreturn]] inline void parse_fail(const Line& l, const Token& t, const std::string& what) {
  throw ParseError(l.number, t.column, what);
}

[[noreturn]] inline void parse_fail(const Line& l, const std::string& what) {
  throw ParseError(l.number, 1, what);
}

inline Integer parse_integer(const Line& l, const Token& t) {
  std::string s = t.text;
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  const bool digits = !s.empty() && s.find_first_not_of("0123456789", s[0] == '-' ? 1 : 0) == std::string::npos &&
                      s != "-";
  if (!digits) parse_fail(l, t, "expected an integer, got '" + t.text + "'");
  return Integer(s, 10);
}

inline i64 parse_i64(const Line& l, const Token& t) {
  const Integer z = parse_integer(l, t);
  if (!fits_i64(z)) parse_fail(l, t, "integer '" + t.text + "' out of range");
  return z.get_si();
}

inline Rational parse_rational(const Line& l, const Token& t) {
  const auto slash = t.text.find('/');
  const Integer num = parse_integer(l, {t.text.substr(0, slash), t.column});
  if (slash == std::string::npos) return Rational(num);
  const Integer den = parse_integer(l, {t.text.substr(slash + 1), t.column + slash + 1});
  if (den == 0) parse_fail(l, {t.text, t.column + slash + 1}, "zero denominator");
  return make_rational(num, den);
}

/// key=value header fields; every name in `required` must be present once.
inline std::map<std::string, Token> header_fields(const Line& l, std::size_t first,
                                                  const std::vector<std::string>& required) {
  std::map<std::string, Token> fields;
  for (std::size_t i = first; i < l.tokens.size(); ++i) {
    const Token& t = l.tokens[i];
    const auto eq = t.text.find('=');
    if (eq == std::string::npos || eq == 0) parse_fail(l, t, "expected key=value, got '" + t.text + "'");
    const std::string key = t.text.substr(0, eq);
    if (std::find(required.begin(), required.end(), key) == required.end())
      parse_fail(l, t, "unknown header field '" + key + "'");
    if (fields.count(key)) parse_fail(l, t, "repeated header field '" + key + "'");
    fields.emplace(key, Token{t.text.substr(eq + 1), t.column + eq + 1});
  }
  for (const auto& key : required)
    if (!fields.count(key)) parse_fail(l, "missing header field '" + key + "'");
  return fields;
}

inline void expect_magic(const std::vector<Line>& lines, const std::string& magic) {
  if (lines.empty()) throw ParseError(1, 1, "empty input, expected '" + magic + " 1' header");
  const Line& h = lines.front();
  if (h.tokens[0].text != magic) parse_fail(h, h.tokens[0], "expected '" + magic + "' header");
  if (h.tokens.size() < 2 || h.tokens[1].text != "1") parse_fail(h, h.tokens.size() < 2 ? h.tokens[0] : h.tokens[1], "unsupported format version");
}

}  // namespace io_detail

inline std::string serialize_table(const FourierTable& f) {
  std::ostringstream os;
  os << "PFES 1 N=" << f.level() << " k=" << f.weight() << " B=" << f.disc_bound() << " CB=" << f.certified_bound()
     << '\n';
  if (f.fricke_sign) os << "EPS=" << (*f.fricke_sign > 0 ? "+1" : "-1") << '\n';
  for (const auto& [p, lambda] : f.eigenvalues) os << "LAMBDA p=" << p << ' ' << to_string(lambda) << '\n';
  for (const auto& op : f.provenance) os << "OP " << op << '\n';
  for (const auto& [t, v] : f.entries()) os << t.n << ' ' << t.r << ' ' << t.mn << ' ' << to_string(v) << '\n';
  return os.str();
}

inline FourierTable parse_table(std::string_view text) {
  using namespace io_detail;
  const auto lines = tokenize(text);
  expect_magic(lines, "PFES");
  const auto h = header_fields(lines.front(), 2, {"N", "k", "B", "CB"});
  const i64 level = parse_i64(lines.front(), h.at("N"));
  const i64 weight = parse_i64(lines.front(), h.at("k"));
  const i64 bound = parse_i64(lines.front(), h.at("B"));
  const i64 cbound = parse_i64(lines.front(), h.at("CB"));
  if (weight < -1000 || weight > 1000) parse_fail(lines.front(), h.at("k"), "weight out of range");
  FourierTable f(level, static_cast<int>(weight), bound, cbound);

  std::set<QuadIndex> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    const Token& head = l.tokens[0];
    if (head.text.rfind("EPS=", 0) == 0) {
      if (l.tokens.size() != 1) parse_fail(l, l.tokens[1], "unexpected token after EPS");
      if (f.fricke_sign) parse_fail(l, head, "repeated EPS line");
      const std::string v = head.text.substr(4);
      if (v != "+1" && v != "-1") parse_fail(l, {v, head.column + 4}, "EPS must be +1 or -1");
      f.fricke_sign = v == "+1" ? 1 : -1;
    } else if (head.text == "LAMBDA") {
      if (l.tokens.size() != 3 || l.tokens[1].text.rfind("p=", 0) != 0)
        parse_fail(l, head, "expected 'LAMBDA p=<p> <rational>'");
      const i64 p = parse_i64(l, {l.tokens[1].text.substr(2), l.tokens[1].column + 2});
      f.eigenvalues.emplace_back(p, parse_rational(l, l.tokens[2]));
    } else if (head.text == "OP") {
      const auto pos = l.raw.find("OP") + 2;
      const auto first = l.raw.find_first_not_of(" \t", pos);
      const auto last = l.raw.find_last_not_of(" \t");
      f.provenance.push_back(first == std::string::npos ? std::string() : l.raw.substr(first, last - first + 1));
    } else {
      if (l.tokens.size() != 4)
        parse_fail(l, l.tokens.size() > 4 ? l.tokens[4] : head, "expected 'n r mN num/den'");
      const QuadIndex t{parse_i64(l, l.tokens[0]), parse_i64(l, l.tokens[1]), parse_i64(l, l.tokens[2])};
      const Rational v = parse_rational(l, l.tokens[3]);
      const std::string why = index_violation(t, level);
      require(why.empty(), ErrorKind::invariant_error,
              "line " + std::to_string(l.number) + ": index " + to_string(t) + ": " + why);
      require(t.abs_disc() <= bound, ErrorKind::invariant_error,
              "line " + std::to_string(l.number) + ": index " + to_string(t) + ": |disc| exceeds B");
      require(seen.insert(t).second, ErrorKind::invariant_error,
              "line " + std::to_string(l.number) + ": duplicate index " + to_string(t));
      f.set(t, v);
    }
  }
  return f;
}

inline std::string serialize_qseries(const QSeries& s) {
  std::ostringstream os;
  os << "QSER 1 k=" << s.k << " half=" << (s.half ? 1 : 0) << " level=" << s.level << " bound=" << s.bound
     << " char=" << s.character.to_string() << '\n';
  for (const auto& [d, v] : s.coeffs) os << d << ' ' << to_string(v) << '\n';
  return os.str();
}

inline QSeries parse_qseries(std::string_view text) {
  using namespace io_detail;
  const auto lines = tokenize(text);
  expect_magic(lines, "QSER");
  const Line& hl = lines.front();
  const auto h = header_fields(hl, 2, {"k", "half", "level", "bound", "char"});
  const i64 half = parse_i64(hl, h.at("half"));
  if (half != 0 && half != 1) parse_fail(hl, h.at("half"), "half must be 0 or 1");
  DirichletCharacter chi = DirichletCharacter::trivial(1);
  try {
    chi = DirichletCharacter::parse(h.at("char").text);
  } catch (const Error& e) {
    parse_fail(hl, h.at("char"), e.what());
  }
  QSeries s(static_cast<int>(parse_i64(hl, h.at("k"))), half == 1, parse_i64(hl, h.at("level")), chi,
            parse_i64(hl, h.at("bound")));
  std::set<i64> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.tokens.size() != 2) parse_fail(l, l.tokens[0], "expected 'D num/den'");
    const i64 d = parse_i64(l, l.tokens[0]);
    require(seen.insert(d).second, ErrorKind::invariant_error,
            "line " + std::to_string(l.number) + ": duplicate exponent " + std::to_string(d));
    s.set(d, parse_rational(l, l.tokens[1]));
  }
  return s;
}

inline std::string serialize_slice(const JacobiSlice& s) {
  std::ostringstream os;
  os << "JSLICE 1 m=" << s.index << " k=" << s.weight << " bound=" << s.bound << " zero=" << (s.structural_zero ? 1 : 0)
     << '\n';
  for (const auto& [key, v] : s.coeffs) os << key.first << ' ' << key.second << ' ' << to_string(v) << '\n';
  return os.str();
}

inline JacobiSlice parse_slice(std::string_view text) {
  using namespace io_detail;
  const auto lines = tokenize(text);
  expect_magic(lines, "JSLICE");
  const Line& hl = lines.front();
  const auto h = header_fields(hl, 2, {"m", "k", "bound", "zero"});
  JacobiSlice s;
  s.index = parse_i64(hl, h.at("m"));
  s.weight = static_cast<int>(parse_i64(hl, h.at("k")));
  s.bound = parse_i64(hl, h.at("bound"));
  s.structural_zero = parse_i64(hl, h.at("zero")) != 0;
  if (s.index < 1) parse_fail(hl, h.at("m"), "index must be positive");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& l = lines[i];
    if (l.tokens.size() != 3) parse_fail(l, l.tokens[0], "expected 'n r num/den'");
    const std::pair<i64, i64> key{parse_i64(l, l.tokens[0]), parse_i64(l, l.tokens[1])};
    require(!s.coeffs.count(key), ErrorKind::invariant_error,
            "line " + std::to_string(l.number) + ": duplicate key (" + std::to_string(key.first) + "," +
                std::to_string(key.second) + ")");
    const Rational v = parse_rational(l, l.tokens[2]);
    if (v != 0) s.coeffs[key] = v;
  }
  return s;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorKind::invalid_argument, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorKind::invalid_argument, "cannot write '" + path + "'");
  out << text;
}

}  // namespace pfes
