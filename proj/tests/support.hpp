#pragma once

// Constructions shared by the unit tests, the acceptance runner and the
// fixture checks. The shipped files under tests/data are exactly what these
// functions produce.

#include <deque>
#include <random>
#include <string>
#include <unordered_set>

#include "pfes/pfes.hpp"

namespace pfes::fixtures {

inline std::string data_path(const std::string& name) { return std::string(PFES_TEST_DATA_DIR) + "/" + name; }

/// N = 3, k = 2: the orbit of (1,1,3) under the Gamma^0(3) generators and the
/// Fricke map inside the box n <= 5, mN <= 15, all coefficients 1.
inline FourierTable pipeline_fixture() {
  constexpr i64 level = 3, bound = 11, window = 5;
  const IndexWindow w = IndexWindow::fricke_stable(window, level);
  std::vector<IntMat2> moves;
  for (const auto& g : default_gamma0_generators(level)) {
    const IntMat2 a = to_int_matrix(g);
    moves.push_back(a);
    moves.push_back({a.d, -a.b, -a.c, a.a});
  }
  auto inside = [&](const QuadIndex& t) {
    return is_valid_index(t, level) && t.abs_disc() <= bound && w.contains(t);
  };
  FourierTable f(level, 2, bound, bound);
  std::deque<QuadIndex> queue{{1, 1, 3}};
  std::unordered_set<QuadIndex, QuadIndexHash> seen{{1, 1, 3}};
  while (!queue.empty()) {
    const QuadIndex t = queue.front();
    queue.pop_front();
    f.set(t, 1);
    std::vector<QuadIndex> next{fricke_index(t, level)};
    for (const auto& m : moves) next.push_back(congruence(t, m));
    for (const auto& x : next)
      if (inside(x) && seen.insert(x).second) queue.push_back(x);
  }
  f.fricke_sign = 1;
  f.provenance.push_back("orbit of (1,1,3) under Gamma^0(3) and Fricke, n <= 5, mN <= 15");
  return f;
}

/// The first 10^4 keys (canonical order) of a level-3 window, with values
/// num/den drawn from a fixed-seed generator.
inline FourierTable roundtrip_fixture() {
  constexpr i64 level = 3, bound = 1000;
  const auto keys = window_keys(level, bound, IndexWindow::fricke_stable(40, level));
  std::mt19937_64 rng(20240601);
  FourierTable f(level, 10, bound, bound);
  f.fricke_sign = -1;
  f.eigenvalues.emplace_back(3, make_rational(-7, 2));
  f.eigenvalues.emplace_back(5, make_rational(123456789012345LL, 7));
  f.provenance.push_back("round-trip fixture");
  std::size_t placed = 0;
  for (const auto& t : keys) {
    if (placed == 10000) break;
    const i64 num = static_cast<i64>(rng() % 2000001) - 1000000;
    const i64 den = static_cast<i64>(rng() % 97) + 1;
    if (num == 0) continue;
    f.set(t, make_rational(num, den));
    ++placed;
  }
  return f;
}

/// A table with a(t) = value and nothing else.
inline FourierTable delta_table(i64 level, int weight, const QuadIndex& t, i64 bound, const Rational& value = 1) {
  FourierTable f(level, weight, bound, bound);
  f.set(t, value);
  return f;
}

}  // namespace pfes::fixtures
