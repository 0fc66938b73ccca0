#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace pfes;

namespace {

Rational q(i64 n, i64 d = 1) { return make_rational(n, d); }

Mat2 index_matrix(const QuadIndex& t) { return t.as_matrix(); }

}  // namespace

TEST(SlashTerm, Examples) {
  const QuadIndex t{2, 1, 9};
  const auto up = slash_term(SimilitudeMatrix(Mat4::diagonal({5, 5, 1, 1})), t, 3);
  EXPECT_EQ(up.index, q(5) * index_matrix(t));
  EXPECT_EQ(up.scale, 125);
  EXPECT_EQ(up.phase, 0);

  const auto id = slash_term(SimilitudeMatrix(Mat4::identity()), t, 3);
  EXPECT_EQ(id.index, index_matrix(t));
  EXPECT_EQ(id.scale, 1);

  const auto down = slash_term(SimilitudeMatrix(Mat4::diagonal({1, 1, 5, 5})), t, 3);
  EXPECT_EQ(down.index, q(1, 5) * index_matrix(t));
  EXPECT_EQ(down.scale, q(1, 125));
  EXPECT_EQ(down.phase, 0);
}

TEST(SlashTerm, Composes) {
  const auto cosets = build_up_cosets(3, 15);
  const QuadIndex t{2, 3, 15};
  for (std::size_t i = 0; i < cosets.size(); i += 7)
    for (std::size_t j = 0; j < cosets.size(); j += 11) {
      const auto& g = cosets[i].final_rep;
      const auto& h = cosets[j].final_rep;
      const auto first = slash_term(g, index_matrix(t), 4);
      const auto second = slash_term(h, first.index, 4);
      const auto both = slash_term(g * h, index_matrix(t), 4);
      EXPECT_EQ(second.index, both.index);
      EXPECT_EQ(first.scale * second.scale, both.scale);
      EXPECT_EQ(frac_part(first.phase + second.phase), both.phase);
    }
}

TEST(Gamma0, Examples) {
  const QuadIndex t{1, 1, 3};
  EXPECT_EQ(gamma0_transform(t, Mat2::identity(), 3), t);
  const QuadIndex a = gamma0_transform(t, Mat2{{1, 3}, {0, 1}}, 3);
  EXPECT_EQ(a, (QuadIndex{1, 7, 15}));
  EXPECT_EQ(a.disc(), -11);
  const QuadIndex b = gamma0_transform(t, Mat2{{1, 0}, {1, 1}}, 3);
  EXPECT_EQ(b, (QuadIndex{5, 7, 3}));
  EXPECT_EQ(b.disc(), -11);
  EXPECT_THROW(gamma0_transform(t, Mat2{{1, 1}, {0, 1}}, 3), Error);
}

TEST(Fricke, Examples) {
  EXPECT_EQ(fricke_index({1, 1, 3}, 3), (QuadIndex{1, -1, 3}));
  const QuadIndex t{2, 1, 9};
  EXPECT_EQ(t.disc(), -71);
  EXPECT_EQ(fricke_index(t, 3).disc(), -71);
  EXPECT_EQ(fricke_index(fricke_index(t, 3), 3), t);
}

TEST(Equivariance, RandomTablesAndPerturbation) {
  RandomTableSpec spec;
  spec.level = 5;
  spec.weight = 4;
  spec.disc_bound = 300;
  spec.seed = 99;
  spec.zero_one_in = 0;
  FourierTable f = random_symmetric_table(spec);
  const auto gens = default_gamma0_generators(5);
  const auto window = IndexWindow::fricke_stable(spec.window, 5);
  EXPECT_TRUE(check_equivariance(f, gens, window).ok());

  // Perturb one key whose orbit has another member in the window.
  const QuadIndex bumped{1, 1, 5};
  ASSERT_TRUE(f.contains(bumped));
  f.set(bumped, f.at(bumped) + 1);
  const auto report = check_equivariance(f, gens, window);
  ASSERT_FALSE(report.ok());
  EXPECT_EQ(report.orbits.size(), 1u);
  for (const auto& v : report.violations) EXPECT_TRUE(v.index == bumped || v.image == bumped);

  EXPECT_TRUE(check_equivariance(FourierTable(5, 4, 10, 10), gens).ok());
}

TEST(FrickeEigen, Signs) {
  RandomTableSpec spec;
  spec.level = 7;
  spec.weight = 2;
  spec.disc_bound = 200;
  spec.seed = 4;
  spec.fricke_sign = -1;
  EXPECT_EQ(fricke_eigen_check(random_symmetric_table(spec)), -1);
  spec.fricke_sign = 1;
  EXPECT_EQ(fricke_eigen_check(random_symmetric_table(spec)), 1);
  EXPECT_EQ(fricke_eigen_check(FourierTable(7, 2, 10, 10)), 1);

  FourierTable mixed(3, 2, 50, 50);
  mixed.set({1, 1, 3}, 1);
  mixed.set({1, -1, 3}, 1);
  mixed.set({1, 0, 6}, 1);
  mixed.set({2, 0, 3}, -1);
  EXPECT_EQ(fricke_eigen_check(mixed), std::nullopt);
}

TEST(FourierJacobi, ExtractAndTheta) {
  const FourierTable delta = fixtures::delta_table(3, 2, {1, 1, 3}, 50);
  const JacobiSlice zero = fj_extract(delta, 2);
  EXPECT_TRUE(zero.structural_zero);
  EXPECT_TRUE(zero.coeffs.empty());
  EXPECT_TRUE(fj_extract(FourierTable(3, 2, 50, 50), 3).coeffs.empty());

  const JacobiSlice phi = fj_extract(delta, 3);
  ASSERT_EQ(phi.coeffs.size(), 1u);
  EXPECT_EQ(phi.at(1, 1), 1);
  const ThetaComponents h = theta_components(phi);
  ASSERT_EQ(h.h.size(), 6u);
  for (std::size_t mu = 0; mu < 6; ++mu) EXPECT_EQ(h.h[mu].size(), mu == 1 ? 1u : 0u);
  EXPECT_EQ(h.h[1].at(11), 1);
  EXPECT_TRUE(theta_components(JacobiSlice{}).h[0].empty());
}

TEST(FourierJacobi, RoundTrip) {
  RandomTableSpec spec;
  spec.level = 3;
  spec.weight = 2;
  spec.disc_bound = 400;
  spec.seed = 12;
  const FourierTable f = random_symmetric_table(spec);
  const JacobiSlice phi = fj_extract(f, 6);
  const ThetaComponents h = theta_components(phi);
  for (const auto& [key, value] : phi.coeffs) {
    const auto [n, r] = key;
    if (r < 0 || r >= 12) continue;
    EXPECT_EQ(mod(-(4 * n * 6 - r * r), 24), mod(r * r, 24));
    EXPECT_EQ(h.h[static_cast<std::size_t>(r)].at(4 * n * 6 - r * r), value);
  }
}

TEST(RandomTables, Deterministic) {
  RandomTableSpec spec;
  spec.level = 15;
  spec.weight = 10;
  spec.disc_bound = 400;
  spec.seed = 77;
  const FourierTable f = random_symmetric_table(spec);
  EXPECT_EQ(f.entries(), random_symmetric_table(spec).entries());
  for (const auto& [t, v] : f.entries()) EXPECT_TRUE(is_valid_index(t, 15));
}
