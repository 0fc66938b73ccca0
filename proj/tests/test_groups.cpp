#include <gtest/gtest.h>

#include <random>

#include "pfes/pfes.hpp"

using namespace pfes;

namespace {

Rational q(i64 n, i64 d = 1) { return make_rational(n, d); }

const Mat4 kDisplayedG{{1, 0, -1, 0}, {0, 1, 0, 0}, {1, 3, 0, 0}, {3, 9, -3, 1}};

}  // namespace

TEST(Membership, Examples) {
  EXPECT_TRUE(is_member(Mat4::identity(), GroupPattern::paramodular(3)));
  EXPECT_TRUE(is_member(kDisplayedG, GroupPattern::paramodular(3)));
  EXPECT_FALSE(is_member(Mat4::diagonal({1, 1, 3, 3}), GroupPattern::paramodular(3)));
  EXPECT_TRUE(is_member(Mat2{{1, 3}, {0, 1}}, GroupPattern::gamma_upper0(3)));
  EXPECT_FALSE(is_member(Mat2{{1, 0}, {1, 1}}, GroupPattern::gamma_lower0(3)));
  EXPECT_TRUE(is_member(Mat2{{1, 0}, {3, 1}}, GroupPattern::gamma_lower0(3)));
  EXPECT_FALSE(is_member(Mat2{{1, 1}, {0, 1}}, GroupPattern::gamma_upper0(3)));
  EXPECT_FALSE(is_member(Mat2{{2, 0}, {0, 1}}, GroupPattern::sl2z()));
}

TEST(Membership, LocalPatternsAgreeWithGlobal) {
  // Words in paramodular generators are members locally at every p | N.
  std::mt19937_64 rng(5);
  for (i64 level : {3, 15, 21, 35}) {
    std::vector<Mat4> gens;
    for (i64 a = 1; a < prime_divisors(level).front(); ++a) gens.push_back(construct_g(a, prime_divisors(level).front(), level));
    gens.push_back(Mat4{{1, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
    gens.push_back(Mat4{{1, 0, 0, 0}, {0, 1, 0, q(1, level)}, {0, 0, 1, 0}, {0, 0, 0, 1}});
    gens.push_back(Mat4{{1, 0, 0, 0}, {0, 1, 0, 0}, {1, 0, 1, 0}, {0, 0, 0, 1}});
    gens.push_back(Mat4{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, q(level), 0, 1}});
    for (int i = 0; i < 50; ++i) {
      Mat4 w = Mat4::identity();
      for (int j = 0; j < 5; ++j) {
        const Mat4& g = gens[rng() % gens.size()];
        w = w * (rng() % 2 ? g : g.inverse());
      }
      ASSERT_TRUE(is_member(w, GroupPattern::paramodular(level)));
      for (const auto& pp : factorize(level)) EXPECT_TRUE(is_member(w, GroupPattern::local_k(pp.prime, pp.exponent)));
    }
  }
}

TEST(Cosets, Sizes) {
  const auto c = build_up_cosets(3, 3);
  EXPECT_EQ(c.size(), 48u);
  std::map<UpFamily, std::size_t> sizes;
  for (const auto& x : c) ++sizes[x.family];
  EXPECT_EQ(sizes[UpFamily::siegel], 27u);
  EXPECT_EQ(sizes[UpFamily::klingen], 9u);
  EXPECT_EQ(sizes[UpFamily::siegel_twisted], 9u);
  EXPECT_EQ(sizes[UpFamily::klingen_twisted], 3u);
}

TEST(Cosets, FourthFamilyZeroIsDiagonal) {
  for (const auto& x : build_up_cosets(3, 15))
    if (x.family == UpFamily::klingen_twisted && x.a == 0) {
      EXPECT_EQ(x.final_rep.matrix(), Mat4::diagonal({3, 3, 1, 1}));
      EXPECT_TRUE(same_left_coset(x.final_rep.matrix(), x.original, 15));
    }
}

TEST(Cosets, DistinctAtFive) {
  const auto c = build_up_cosets(5, 5);
  ASSERT_EQ(c.size(), 180u);
  std::vector<SimilitudeMatrix> finals;
  for (const auto& x : c) finals.push_back(x.final_rep);
  const LeftCosetTester tester(finals, 5);
  for (std::size_t i = 0; i < finals.size(); ++i)
    for (std::size_t j = i + 1; j < finals.size(); ++j) ASSERT_FALSE(tester.same(i, j)) << i << " " << j;
}

TEST(Cosets, SameLeftCoset) {
  const auto c = build_up_cosets(3, 3);
  EXPECT_TRUE(same_left_coset(c[0].original, c[0].original, 3));
  // First family, (a,b,c) = (0,0,0) against (1,0,0).
  EXPECT_FALSE(same_left_coset(c[0].original, c[9].original, 3));
  EXPECT_EQ(c[9].a, 1);
  for (const auto& x : c)
    if (x.family == UpFamily::klingen_twisted && x.a != 0)
      EXPECT_TRUE(same_left_coset(construct_g(x.a, 3, 3) * x.original, x.original, 3));
}

TEST(Cosets, BadLevel) {
  EXPECT_THROW(build_up_cosets(3, 9), Error);
  EXPECT_THROW(build_up_cosets(5, 3), Error);
}

TEST(ConstructG, Examples) {
  EXPECT_EQ(construct_g(1, 3, 3), kDisplayedG);
  const Mat4 product{{3, 3, -1, 0}, {-1, 0, 0, q(1, 3)}, {0, 0, 0, 1}, {0, 0, -3, 3}};
  EXPECT_EQ(construct_g(1, 3, 3) * detail::fourth_family_original(1, 3, 3), product);
  try {
    construct_g(1, 3, 9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::bad_level);
  }
}

TEST(ConstructG, AlphaBetaRange) {
  for (i64 level : {3, 15, 21, 33, 35})
    for (i64 p : prime_divisors(level)) {
      const auto [alpha, beta] = solve_alpha_beta(p, level);
      EXPECT_EQ(alpha * p * p + beta * level, p);
      EXPECT_GE(beta, 0);
      EXPECT_LT(beta, p * p);
    }
}
