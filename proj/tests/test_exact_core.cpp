#include <gtest/gtest.h>

#include <random>

#include "pfes/pfes.hpp"

using namespace pfes;

namespace {

Rational q(i64 n, i64 d = 1) { return make_rational(n, d); }

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::internal;
}

Mat4 fricke_proxy(i64 n) { return Mat4{{0, q(n), 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, q(-n), 0}}; }

}  // namespace

TEST(Rational, AlwaysReduced) {
  const Rational x = make_rational(6, -4);
  EXPECT_EQ(x.get_num(), -3);
  EXPECT_EQ(x.get_den(), 2);
  EXPECT_EQ(kind_of([] { make_rational(1, 0); }), ErrorKind::invalid_argument);
  EXPECT_EQ(frac_part(q(-7, 3)), q(2, 3));
  EXPECT_EQ(valuation(q(18, 25), 3), 2);
  EXPECT_EQ(valuation(q(18, 25), 5), -2);
  EXPECT_EQ(pow(q(2, 3), -2), q(9, 4));
}

TEST(Arith, Basics) {
  EXPECT_TRUE(is_prime(1000003));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(561));
  EXPECT_EQ(crt(2, 3, 3, 5), 8);
  EXPECT_EQ(*inverse_mod(3, 7), 5);
  EXPECT_FALSE(inverse_mod(3, 9).has_value());
  EXPECT_EQ(jacobi(2, 7), 1);
  EXPECT_EQ(jacobi(3, 7), -1);
  EXPECT_TRUE(is_squarefree(30));
  EXPECT_FALSE(is_squarefree(12));
  EXPECT_EQ(euler_phi(36), 12);
  EXPECT_EQ(kind_of([] { checked_mul(i64{1} << 40, i64{1} << 40); }), ErrorKind::overflow);
}

TEST(Multiplier, Examples) {
  EXPECT_EQ(multiplier(Mat4::identity()), 1);
  EXPECT_EQ(multiplier(Mat4::diagonal({1, 1, 5, 5})), 5);
  EXPECT_EQ(multiplier(fricke_proxy(3)), 3);
  EXPECT_EQ(multiplier(fricke_proxy(35)), 35);
  EXPECT_EQ(kind_of([] { multiplier(Mat4::diagonal({1, 2, 1, 1})); }), ErrorKind::not_similitude);
}

TEST(Multiplier, IsMultiplicative) {
  std::mt19937_64 rng(3);
  auto pick = [&](i64 lo, i64 hi) { return std::uniform_int_distribution<i64>(lo, hi)(rng); };
  auto random_similitude = [&] {
    // Levi element times a symmetric translation, optionally times the Fricke proxy.
    const i64 mu = pick(1, 7);
    const Mat2 a{{q(pick(1, 4)), q(pick(-3, 3))}, {0, q(pick(1, 4))}};
    const Mat2 s{{q(pick(-5, 5)), q(pick(-5, 5), 2)}, {0, q(pick(-5, 5))}};
    const Mat2 sym = s + s.transpose();
    const Mat4 translate = from_blocks(Mat2::identity(), sym, Mat2{}, Mat2::identity());
    const Mat4 levi = from_blocks(a, Mat2{}, Mat2{}, q(mu) * a.inverse().transpose());
    return SimilitudeMatrix(levi * translate * (pick(0, 1) ? fricke_proxy(pick(1, 5)) : Mat4::identity()));
  };
  for (int i = 0; i < 200; ++i) {
    const SimilitudeMatrix g = random_similitude(), h = random_similitude();
    EXPECT_EQ((g * h).multiplier(), g.multiplier() * h.multiplier());
    EXPECT_EQ((g * h).multiplier(), multiplier((g * h).matrix()));
    EXPECT_EQ(g.inverse().multiplier(), 1 / g.multiplier());
  }
}

TEST(BlockParabolic, Examples) {
  const auto parts = block_parabolic_parts(SimilitudeMatrix(Mat4::diagonal({3, 3, 1, 1})));
  EXPECT_EQ(parts.a, q(3) * Mat2::identity());
  EXPECT_TRUE(parts.b.is_zero());
  EXPECT_EQ(parts.d, Mat2::identity());

  const Mat4 product{{3, 3, -1, 0}, {-1, 0, 0, q(1, 3)}, {0, 0, 0, 1}, {0, 0, -3, 3}};
  const auto p2 = block_parabolic_parts(SimilitudeMatrix(product));
  EXPECT_EQ(p2.a, (Mat2{{3, 3}, {-1, 0}}));
  EXPECT_EQ(p2.b, (Mat2{{-1, 0}, {0, q(1, 3)}}));
  EXPECT_EQ(p2.d, (Mat2{{0, 1}, {-3, 3}}));
  EXPECT_EQ(p2.a * p2.d.transpose(), q(3) * Mat2::identity());
  EXPECT_EQ(p2.multiplier, 3);

  EXPECT_EQ(kind_of([] { block_parabolic_parts(SimilitudeMatrix(standard_form())); }), ErrorKind::not_parabolic);
}

TEST(Matrix, InverseAndDeterminant) {
  const Mat4 g{{3, 3, -1, 0}, {-1, 0, 0, q(1, 3)}, {0, 0, 0, 1}, {0, 0, -3, 3}};
  EXPECT_EQ(g * g.inverse(), Mat4::identity());
  EXPECT_EQ(g.determinant(), 9);
}
