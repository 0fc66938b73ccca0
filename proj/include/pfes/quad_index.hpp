#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <ostream>
#include <string>

#include "pfes/arith.hpp"
#include "pfes/matrix.hpp"

namespace pfes {

/// Half-integral index T = [[n, r/2], [r/2, mn]], where mn is the full
/// bottom-right entry (m * N at level N). The level lives on the owning table.
struct QuadIndex {
  i64 n = 0;
  i64 r = 0;
  i64 mn = 0;

  /// r^2 - 4 n mn; negative for positive definite T.
  i64 disc() const { return narrow(static_cast<i128>(r) * r - static_cast<i128>(4) * n * mn); }
  i64 abs_disc() const { return abs64(disc()); }

  Mat2 as_matrix() const {
    return Mat2{{Rational(static_cast<long>(n)), make_rational(r, 2)},
                {make_rational(r, 2), Rational(static_cast<long>(mn))}};
  }

  friend bool operator==(const QuadIndex&, const QuadIndex&) = default;
  friend auto operator<=>(const QuadIndex&, const QuadIndex&) = default;

  friend std::ostream& operator<<(std::ostream& os, const QuadIndex& t) {
    return os << '(' << t.n << ',' << t.r << ',' << t.mn << ')';
  }
};

inline std::string to_string(const QuadIndex& t) {
  return "(" + std::to_string(t.n) + "," + std::to_string(t.r) + "," + std::to_string(t.mn) + ")";
}

/// Canonical serialization order: (|disc|, n, r); mn is then determined.
struct CanonicalLess {
  bool operator()(const QuadIndex& x, const QuadIndex& y) const {
    const i64 dx = x.abs_disc(), dy = y.abs_disc();
    if (dx != dy) return dx < dy;
    if (x.n != y.n) return x.n < y.n;
    if (x.r != y.r) return x.r < y.r;
    return x.mn < y.mn;
  }
};

struct QuadIndexHash {
  std::size_t operator()(const QuadIndex& t) const noexcept {
    std::size_t h = std::hash<i64>{}(t.n);
    h ^= std::hash<i64>{}(t.r) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<i64>{}(t.mn) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

/// Empty string when T is a valid cusp index at level N, else the violated rule.
inline std::string index_violation(const QuadIndex& t, i64 level) {
  if (t.n <= 0) return "n must be positive";
  if (t.mn <= 0) return "bottom-right entry must be positive";
  if (level < 1) return "level must be positive";
  if (t.mn % level != 0) return "N does not divide the bottom-right entry";
  if (static_cast<i128>(t.r) * t.r >= static_cast<i128>(4) * t.n * t.mn)
    return "disc must be negative (T positive definite)";
  return {};
}

inline bool is_valid_index(const QuadIndex& t, i64 level) { return index_violation(t, level).empty(); }

/// Integral 2x2 matrix [[a, b], [c, d]].
struct IntMat2 {
  i64 a = 1, b = 0, c = 0, d = 1;

  i64 det() const { return narrow(static_cast<i128>(a) * d - static_cast<i128>(b) * c); }
  IntMat2 transpose() const { return {a, c, b, d}; }
  Mat2 as_matrix() const {
    return Mat2{{Rational(static_cast<long>(a)), Rational(static_cast<long>(b))},
                {Rational(static_cast<long>(c)), Rational(static_cast<long>(d))}};
  }

  friend IntMat2 operator*(const IntMat2& x, const IntMat2& y) {
    return {narrow(static_cast<i128>(x.a) * y.a + static_cast<i128>(x.b) * y.c),
            narrow(static_cast<i128>(x.a) * y.b + static_cast<i128>(x.b) * y.d),
            narrow(static_cast<i128>(x.c) * y.a + static_cast<i128>(x.d) * y.c),
            narrow(static_cast<i128>(x.c) * y.b + static_cast<i128>(x.d) * y.d)};
  }
  friend bool operator==(const IntMat2&, const IntMat2&) = default;
};

inline IntMat2 to_int_matrix(const Mat2& m) {
  require(m.is_integral(), ErrorKind::invalid_argument, "matrix is not integral");
  return {to_i64(m(0, 0)), to_i64(m(0, 1)), to_i64(m(1, 0)), to_i64(m(1, 1))};
}

/// tA T A computed on the integer triple (no validity requirement).
inline QuadIndex congruence(const QuadIndex& t, const IntMat2& m) {
  const i128 n = t.n, r = t.r, mm = t.mn;
  return {narrow(m.a * (m.a * n + m.c * r) + static_cast<i128>(m.c) * m.c * mm),
          narrow(2 * static_cast<i128>(m.a) * m.b * n + (static_cast<i128>(m.a) * m.d + static_cast<i128>(m.b) * m.c) * r +
                 2 * static_cast<i128>(m.c) * m.d * mm),
          narrow(m.b * (m.b * n + m.d * r) + static_cast<i128>(m.d) * m.d * mm)};
}

/// Y T tY, i.e. congruence by tY.
inline QuadIndex conjugate(const IntMat2& y, const QuadIndex& t) { return congruence(t, y.transpose()); }

/// gcd(n, r, mn).
inline i64 content(const QuadIndex& t) { return gcd3(t.n, t.r, t.mn); }

/// A rational symmetric matrix as a half-integral index, if it is one.
inline std::optional<QuadIndex> as_quad_index(const Mat2& s) {
  if (!s.is_symmetric()) return std::nullopt;
  const Rational twice = 2 * s(0, 1);
  if (!is_integer(s(0, 0)) || !is_integer(s(1, 1)) || !is_integer(twice)) return std::nullopt;
  return QuadIndex{to_i64(s(0, 0)), to_i64(twice), to_i64(s(1, 1))};
}

}  // namespace pfes
