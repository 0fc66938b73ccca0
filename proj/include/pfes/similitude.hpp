#pragma once

// Symplectic similitudes: g with tg J g = mu(g) J, J = [[0, I2], [-I2, 0]].

#include "pfes/matrix.hpp"

namespace pfes {

inline const Mat4& standard_form() {
  static const Mat4 j{{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0}};
  return j;
}

/// The multiplier mu with tg J g = mu J. Throws NotSimilitude when tg J g is
/// not a nonzero multiple of J.
inline Rational multiplier(const Mat4& g) {
  const Mat4 form = g.transpose() * standard_form() * g;
  const Rational mu = form(0, 2);
  require(mu != 0, ErrorKind::not_similitude, "multiplier would be zero");
  require(form == mu * standard_form(), ErrorKind::not_similitude,
          "tg J g is not a scalar multiple of J");
  return mu;
}

class SimilitudeMatrix {
 public:
  explicit SimilitudeMatrix(Mat4 g) : g_(std::move(g)), mu_(pfes::multiplier(g_)) {}

  const Mat4& matrix() const { return g_; }
  const Rational& multiplier() const { return mu_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return g_(i, j); }

  /// g^-1 = mu^-1 J^-1 tg J.
  SimilitudeMatrix inverse() const {
    const Mat4 inv = Rational(1 / mu_) * (-standard_form()) * g_.transpose() * standard_form();
    return SimilitudeMatrix(inv, Rational(1 / mu_));
  }

  friend SimilitudeMatrix operator*(const SimilitudeMatrix& x, const SimilitudeMatrix& y) {
    return SimilitudeMatrix(x.g_ * y.g_, x.mu_ * y.mu_);
  }

  friend bool operator==(const SimilitudeMatrix& x, const SimilitudeMatrix& y) { return x.g_ == y.g_; }

 private:
  // Trusted path for products and inverses, where mu is known algebraically.
  SimilitudeMatrix(Mat4 g, Rational mu) : g_(std::move(g)), mu_(std::move(mu)) {}

  Mat4 g_;
  Rational mu_;
};

struct ParabolicParts {
  Mat2 a;
  Mat2 b;
  Mat2 d;
  Rational multiplier;
};

/// Splits a Siegel-parabolic similitude [[A, B], [0, D]]; the identity
/// A tD = mu I2 is checked, not assumed.
inline ParabolicParts block_parabolic_parts(const SimilitudeMatrix& g) {
  require(sub_block(g.matrix(), 1, 0).is_zero(), ErrorKind::not_parabolic,
          "lower-left block is nonzero");
  ParabolicParts parts{sub_block(g.matrix(), 0, 0), sub_block(g.matrix(), 0, 1),
                       sub_block(g.matrix(), 1, 1), g.multiplier()};
  require(parts.a * parts.d.transpose() == parts.multiplier * Mat2::identity(),
          ErrorKind::broken_similitude, "A tD != mu I2");
  return parts;
}

}  // namespace pfes
