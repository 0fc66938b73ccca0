#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <ostream>

#include "pfes/error.hpp"
#include "pfes/rational.hpp"

namespace pfes {

/// Dense square matrix over Q. Values are immutable once built: every
/// operation returns a fresh matrix.
template <std::size_t Dim>
class SquareMatrix {
 public:
  static constexpr std::size_t dim = Dim;

  SquareMatrix() = default;

  SquareMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    require(rows.size() == Dim, ErrorKind::invalid_argument, "wrong number of rows");
    std::size_t i = 0;
    for (const auto& row : rows) {
      require(row.size() == Dim, ErrorKind::invalid_argument, "wrong number of columns");
      std::size_t j = 0;
      for (const auto& v : row) e_[i * Dim + j++] = v;
      ++i;
    }
  }

  explicit SquareMatrix(const std::array<Rational, Dim * Dim>& entries) : e_(entries) {}

  static SquareMatrix identity() {
    SquareMatrix m;
    for (std::size_t i = 0; i < Dim; ++i) m.e_[i * Dim + i] = 1;
    return m;
  }

  static SquareMatrix diagonal(const std::array<Rational, Dim>& d) {
    SquareMatrix m;
    for (std::size_t i = 0; i < Dim; ++i) m.e_[i * Dim + i] = d[i];
    return m;
  }

  const Rational& operator()(std::size_t i, std::size_t j) const { return e_[i * Dim + j]; }
  const std::array<Rational, Dim * Dim>& entries() const { return e_; }

  SquareMatrix transpose() const {
    SquareMatrix t;
    for (std::size_t i = 0; i < Dim; ++i)
      for (std::size_t j = 0; j < Dim; ++j) t.e_[j * Dim + i] = e_[i * Dim + j];
    return t;
  }

  friend SquareMatrix operator*(const SquareMatrix& x, const SquareMatrix& y) {
    SquareMatrix out;
    for (std::size_t i = 0; i < Dim; ++i)
      for (std::size_t k = 0; k < Dim; ++k) {
        const Rational& a = x.e_[i * Dim + k];
        if (a == 0) continue;
        for (std::size_t j = 0; j < Dim; ++j) out.e_[i * Dim + j] += a * y.e_[k * Dim + j];
      }
    return out;
  }

  friend SquareMatrix operator*(const Rational& s, const SquareMatrix& x) {
    SquareMatrix out;
    for (std::size_t i = 0; i < Dim * Dim; ++i) out.e_[i] = s * x.e_[i];
    return out;
  }

  friend SquareMatrix operator+(const SquareMatrix& x, const SquareMatrix& y) {
    SquareMatrix out;
    for (std::size_t i = 0; i < Dim * Dim; ++i) out.e_[i] = x.e_[i] + y.e_[i];
    return out;
  }

  friend SquareMatrix operator-(const SquareMatrix& x, const SquareMatrix& y) {
    SquareMatrix out;
    for (std::size_t i = 0; i < Dim * Dim; ++i) out.e_[i] = x.e_[i] - y.e_[i];
    return out;
  }

  friend SquareMatrix operator-(const SquareMatrix& x) { return Rational(-1) * x; }

  friend bool operator==(const SquareMatrix& x, const SquareMatrix& y) { return x.e_ == y.e_; }

  Rational trace() const {
    Rational t = 0;
    for (std::size_t i = 0; i < Dim; ++i) t += e_[i * Dim + i];
    return t;
  }

  Rational determinant() const {
    auto work = e_;
    Rational det = 1;
    for (std::size_t col = 0; col < Dim; ++col) {
      std::size_t pivot = col;
      while (pivot < Dim && work[pivot * Dim + col] == 0) ++pivot;
      if (pivot == Dim) return 0;
      if (pivot != col) {
        for (std::size_t j = 0; j < Dim; ++j) std::swap(work[pivot * Dim + j], work[col * Dim + j]);
        det = -det;
      }
      const Rational p = work[col * Dim + col];
      det *= p;
      for (std::size_t i = col + 1; i < Dim; ++i) {
        const Rational f = work[i * Dim + col] / p;
        if (f == 0) continue;
        for (std::size_t j = col; j < Dim; ++j) work[i * Dim + j] -= f * work[col * Dim + j];
      }
    }
    return det;
  }

  /// Gauss-Jordan inverse; throws on a singular matrix.
  SquareMatrix inverse() const {
    auto a = e_;
    SquareMatrix inv = identity();
    auto& b = inv.e_;
    for (std::size_t col = 0; col < Dim; ++col) {
      std::size_t pivot = col;
      while (pivot < Dim && a[pivot * Dim + col] == 0) ++pivot;
      require(pivot < Dim, ErrorKind::invalid_argument, "matrix is singular");
      if (pivot != col)
        for (std::size_t j = 0; j < Dim; ++j) {
          std::swap(a[pivot * Dim + j], a[col * Dim + j]);
          std::swap(b[pivot * Dim + j], b[col * Dim + j]);
        }
      const Rational p = a[col * Dim + col];
      for (std::size_t j = 0; j < Dim; ++j) {
        a[col * Dim + j] /= p;
        b[col * Dim + j] /= p;
      }
      for (std::size_t i = 0; i < Dim; ++i) {
        if (i == col) continue;
        const Rational f = a[i * Dim + col];
        if (f == 0) continue;
        for (std::size_t j = 0; j < Dim; ++j) {
          a[i * Dim + j] -= f * a[col * Dim + j];
          b[i * Dim + j] -= f * b[col * Dim + j];
        }
      }
    }
    return inv;
  }

  bool is_integral() const {
    for (const auto& v : e_)
      if (!is_integer(v)) return false;
    return true;
  }

  bool is_symmetric() const { return *this == transpose(); }

  bool is_zero() const {
    for (const auto& v : e_)
      if (v != 0) return false;
    return true;
  }

  friend std::ostream& operator<<(std::ostream& os, const SquareMatrix& m) {
    os << '[';
    for (std::size_t i = 0; i < Dim; ++i) {
      os << (i ? ",[" : "[");
      for (std::size_t j = 0; j < Dim; ++j) os << (j ? "," : "") << m(i, j);
      os << ']';
    }
    return os << ']';
  }

 private:
  std::array<Rational, Dim * Dim> e_{};
};

using Mat2 = SquareMatrix<2>;
using Mat4 = SquareMatrix<4>;

/// 2x2 block (block_row, block_col) in {0,1}^2 of a 4x4 matrix.
inline Mat2 sub_block(const Mat4& g, std::size_t block_row, std::size_t block_col) {
  const std::size_t r = 2 * block_row, c = 2 * block_col;
  return Mat2{{g(r, c), g(r, c + 1)}, {g(r + 1, c), g(r + 1, c + 1)}};
}

inline Mat4 from_blocks(const Mat2& a, const Mat2& b, const Mat2& c, const Mat2& d) {
  return Mat4{{a(0, 0), a(0, 1), b(0, 0), b(0, 1)},
              {a(1, 0), a(1, 1), b(1, 0), b(1, 1)},
              {c(0, 0), c(0, 1), d(0, 0), d(0, 1)},
              {c(1, 0), c(1, 1), d(1, 0), d(1, 1)}};
}

}  // namespace pfes
