#include <gtest/gtest.h>

#include "support.hpp"

using namespace pfes;
using fixtures::delta_table;

namespace {

RandomTableSpec spec_for(i64 level, int weight, std::uint64_t seed) {
  RandomTableSpec s;
  s.level = level;
  s.weight = weight;
  s.disc_bound = 400;
  s.seed = seed;
  return s;
}

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

}  // namespace

TEST(Up, ZeroTable) {
  const FourierTable zero(3, 2, 400, 400);
  const auto h = HeckeParams::up(3, 3, 2);
  EXPECT_TRUE(up_apply(zero, h).empty());
  EXPECT_TRUE(up_oracle(zero, h).empty());
  EXPECT_TRUE(evdokimov_apply(zero, HeckeParams::tp(5, 3, 2)).empty());
  EXPECT_EQ(up_apply(zero, h).certified_bound(), 400 / 9);
}

TEST(Up, DeltaTable) {
  const FourierTable f = delta_table(3, 2, {1, 1, 3}, 1000);
  const auto h = HeckeParams::up(3, 3, 2);
  const FourierTable g = up_apply(f, h);
  EXPECT_EQ(g.at({3, 3, 9}), 9);
  EXPECT_EQ(g.at({1, 1, 3}), 0);
  EXPECT_TRUE(equal_up_to(g, up_oracle(f, h), g.certified_bound()));
}

TEST(Up, OracleAgreesOnArbitraryData) {
  // The closed form is termwise, so it must match the oracle even on tables
  // with no symmetry at all.
  for (auto [level, p] : std::vector<std::pair<i64, i64>>{{3, 3}, {15, 5}, {21, 7}})
    for (int k : {2, 3}) {
      FourierTable f(level, k, 500, 500);
      i64 v = 1;
      for (const auto& t : window_keys(level, 500, IndexWindow::fricke_stable(6, level))) f.set(t, (v = v * 7 % 23) - 11);
      const auto h = HeckeParams::up(p, level, k);
      const FourierTable a = up_apply(f, h), o = up_oracle(f, h);
      EXPECT_TRUE(equal_up_to(a, o, a.certified_bound())) << level << " " << p << " " << k;
    }
}

TEST(Up, Linearity) {
  const FourierTable f = random_symmetric_table(spec_for(15, 4, 1));
  const FourierTable g = random_symmetric_table(spec_for(15, 4, 2));
  const Rational alpha = make_rational(3, 7), beta = -5;
  FourierTable combo(15, 4, 400, 400);
  for (const auto& [t, v] : f.entries()) combo.add(t, alpha * v);
  for (const auto& [t, v] : g.entries()) combo.add(t, beta * v);
  const auto h = HeckeParams::up(5, 15, 4);
  const FourierTable uf = up_apply(f, h), ug = up_apply(g, h), uc = up_apply(combo, h);
  std::set<QuadIndex, CanonicalLess> keys;
  for (const auto* x : {&uf, &ug, &uc})
    for (const auto& [t, v] : x->entries()) keys.insert(t);
  ASSERT_FALSE(keys.empty());
  for (const auto& t : keys) EXPECT_EQ(uc.at(t), alpha * uf.at(t) + beta * ug.at(t));
}

TEST(Up, FloatMode) {
  const FourierTable f = random_symmetric_table(spec_for(5, 10, 3));
  const auto h = HeckeParams::up(5, 5, 10);
  const auto cmp = compare_float(up_oracle(f, h), up_oracle_float(f, h));
  EXPECT_GT(cmp.compared, 0u);
  EXPECT_LT(cmp.max_relative_error, 1e-9);
}

TEST(Up, Errors) {
  const FourierTable f = delta_table(9, 2, {1, 1, 9}, 400);
  EXPECT_EQ(kind_of([&] { up_apply(f, HeckeParams::up(3, 9, 2)); }), ErrorKind::bad_level);
  const FourierTable g = delta_table(3, 1, {1, 1, 3}, 400);
  EXPECT_EQ(kind_of([&] { up_apply(g, HeckeParams::up(3, 3, 1)); }), ErrorKind::weight_too_small);
}

TEST(Up, BookkeepingAudit) {
  TermAudit audit;
  up_apply(random_symmetric_table(spec_for(21, 3, 5)), HeckeParams::up(3, 21, 3), &audit);
  EXPECT_GT(audit.terms, 0u);
  EXPECT_EQ(audit.mismatches, 0u);
}

TEST(Evdokimov, DefaultReps) {
  const auto reps = default_evdokimov_reps(5, 3);
  ASSERT_EQ(reps.size(), 6u);
  for (const auto& u : reps) EXPECT_TRUE(is_member(u, GroupPattern::gamma_lower0(3)));
  const IntMat2 w = crt_involution(5, 3);
  EXPECT_EQ(w.det(), 1);
  EXPECT_EQ(mod(w.a, 5), 0);
  EXPECT_EQ(mod(w.b, 5), 4);
  EXPECT_EQ(mod(w.c, 5), 1);
  EXPECT_EQ(mod(w.d, 5), 0);
  EXPECT_EQ(mod(w.a, 3), 1);
  EXPECT_EQ(mod(w.c, 3), 0);
  EXPECT_EQ(kind_of([] { resolved_reps(HeckeParams::tp(5, 3, 2, std::vector<Mat2>{})); }), ErrorKind::empty_reps);
  EXPECT_EQ(kind_of([] { resolved_reps(HeckeParams::tp(5, 3, 2, std::vector<Mat2>{Mat2{{1, 0}, {1, 1}}})); }),
            ErrorKind::not_in_group);
}

TEST(Evdokimov, DeltaTable) {
  const FourierTable f = delta_table(3, 2, {1, 1, 3}, 7000);
  const FourierTable g = evdokimov_apply(f, HeckeParams::tp(5, 3, 2));
  EXPECT_EQ(g.size(), 1u);
  EXPECT_EQ(g.at({5, 5, 15}), 5);
}

TEST(Evdokimov, TermDiscriminant) {
  const auto shapes = evdokimov_term_shapes(5, 2, {Mat2{{1, 0}, {1, 1}}});
  const QuadIndex t{1, 1, 3};
  for (const auto& s : shapes) {
    const TermArgument arg = term_argument(s, t, 5);
    EXPECT_TRUE(bookkeeping_holds(s, arg, t, 5));
    if (s.kind == TermKind::evdokimov) EXPECT_EQ(arg.scaled_disc(), -11 * arg.divisor * arg.divisor);
  }
}

TEST(Eigenvalue, Estimate) {
  const FourierTable f = random_symmetric_table(spec_for(7, 2, 8));
  FourierTable seven(7, 2, 400, 400), zero(7, 2, 400, 400);
  for (const auto& [t, v] : f.entries()) seven.set(t, 7 * v);
  EXPECT_EQ(eigenvalue_estimate(f, seven).lambda, 7);
  EXPECT_TRUE(eigenvalue_estimate(f, seven).consistent);
  EXPECT_EQ(eigenvalue_estimate(f, zero).lambda, 0);
  FourierTable off = seven;
  const QuadIndex last = std::prev(f.entries().end())->first;
  off.set(last, off.at(last) + 1);
  const auto est = eigenvalue_estimate(f, off);
  EXPECT_FALSE(est.consistent);
  EXPECT_EQ(est.witness, last);
  EXPECT_EQ(kind_of([&] { eigenvalue_estimate(zero, f); }), ErrorKind::zero_form);
}

TEST(Primitive, Examples) {
  FourierTable f(3, 2, 100, 100);
  f.set({1, 1, 3}, 1);
  f.set({2, 2, 6}, 5);
  auto s = find_primitive(f);
  EXPECT_EQ(s.index, (QuadIndex{1, 1, 3}));
  EXPECT_TRUE(s.primitive);

  FourierTable g(3, 2, 100, 100);
  g.set({2, 2, 6}, 5);
  s = find_primitive(g);
  EXPECT_EQ(s.index, (QuadIndex{2, 2, 6}));
  EXPECT_FALSE(s.primitive);

  EXPECT_EQ(kind_of([] { find_primitive(FourierTable(3, 2, 100, 100)); }), ErrorKind::zero_form);
  EXPECT_TRUE(find_primitive(fixtures::pipeline_fixture()).primitive);
}
