#pragma once

// Deterministic pseudo-random tables that respect the Gamma^0(N) coefficient
// symmetry (and optionally the Fricke symmetry) inside a finite index window.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

#include "pfes/fourier.hpp"

namespace pfes {

struct RandomTableSpec {
  i64 level = 1;
  int weight = 2;
  i64 disc_bound = 100;
  std::uint64_t seed = 0;
  /// Keys are drawn from n <= window, mn <= N * window (a Fricke-stable box).
  i64 window = 8;
  std::optional<int> fricke_sign;
  /// Values are uniform in [-value_range, value_range].
  i64 value_range = 9;
  /// Every zero_one_in-th orbit is forced to zero (0 disables).
  i64 zero_one_in = 4;
};

namespace detail {

/// Union-find with a parity bit: value(x) = sign(x) * value(root(x)).
class SignedUnionFind {
 public:
  explicit SignedUnionFind(std::size_t n) : parent_(n), parity_(n, 0), dead_(n, false) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::pair<std::size_t, int> find(std::size_t x) {
    int parity = 0;
    std::size_t root = x;
    while (parent_[root] != root) {
      parity ^= parity_[root];
      root = parent_[root];
    }
    // Path compression with parity fix-up.
    int acc = parity;
    while (parent_[x] != root) {
      const std::size_t next = parent_[x];
      const int step = parity_[x];
      parent_[x] = root;
      parity_[x] = acc;
      acc ^= step;
      x = next;
    }
    return {root, parity};
  }

  /// Records value(x) = (-1)^odd * value(y).
  void unite(std::size_t x, std::size_t y, int odd) {
    auto [rx, px] = find(x);
    auto [ry, py] = find(y);
    if (rx == ry) {
      if ((px ^ py) != odd) dead_[rx] = true;  // v = -v forces zero
      return;
    }
    parent_[rx] = ry;
    parity_[rx] = px ^ py ^ odd;
    if (dead_[rx]) dead_[ry] = true;
  }

  bool dead(std::size_t root) const { return dead_[root]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> parity_;
  std::vector<bool> dead_;
};

}  // namespace detail

/// All valid keys with |disc| <= bound inside the window, in canonical order.
inline std::vector<QuadIndex> window_keys(i64 level, i64 bound, const IndexWindow& w) {
  std::vector<QuadIndex> keys;
  for (i64 n = 1; n <= w.max_n; ++n)
    for (i64 mn = level; mn <= w.max_mn; mn += level) {
      const i128 four = static_cast<i128>(4) * n * mn;
      if (four - bound > 0 && four > 0) {
        // r^2 in [4 n mn - bound, 4 n mn)
        const i64 lo = static_cast<i64>(std::ceil(std::sqrt(static_cast<long double>(four - bound))));
        for (i64 r = std::max<i64>(0, lo - 1); static_cast<i128>(r) * r < four; ++r) {
          if (four - static_cast<i128>(r) * r > bound) continue;
          keys.push_back({n, r, mn});
          if (r) keys.push_back({n, -r, mn});
        }
      } else {
        for (i64 r = 0; static_cast<i128>(r) * r < four; ++r) {
          keys.push_back({n, r, mn});
          if (r) keys.push_back({n, -r, mn});
        }
      }
    }
  std::sort(keys.begin(), keys.end(), CanonicalLess{});
  return keys;
}

/// A table constant on the classes generated by the Gamma^0(N) generators
/// (and the Fricke map with its sign) restricted to the window.
inline FourierTable random_symmetric_table(const RandomTableSpec& spec) {
  require(spec.window >= 1, ErrorKind::invalid_argument, "window must be positive");
  require(!spec.fricke_sign || *spec.fricke_sign == 1 || *spec.fricke_sign == -1, ErrorKind::invalid_argument,
          "Fricke sign must be +1 or -1");
  const IndexWindow w = IndexWindow::fricke_stable(spec.window, spec.level);
  const auto keys = window_keys(spec.level, spec.disc_bound, w);
  std::unordered_map<QuadIndex, std::size_t, QuadIndexHash> slot;
  for (std::size_t i = 0; i < keys.size(); ++i) slot.emplace(keys[i], i);

  detail::SignedUnionFind uf(keys.size());
  std::vector<IntMat2> moves;
  for (const auto& g : default_gamma0_generators(spec.level)) moves.push_back(to_int_matrix(g));
  for (std::size_t i = 0; i < keys.size(); ++i) {
    for (const auto& m : moves)
      if (auto it = slot.find(congruence(keys[i], m)); it != slot.end()) uf.unite(i, it->second, 0);
    if (spec.fricke_sign)
      if (auto it = slot.find(fricke_index(keys[i], spec.level)); it != slot.end())
        uf.unite(i, it->second, *spec.fricke_sign < 0 ? 1 : 0);
  }

  // Class values drawn in order of each class's first (canonical) key.
  std::mt19937_64 rng(spec.seed);
  const std::uint64_t span = static_cast<std::uint64_t>(2 * spec.value_range + 1);
  std::unordered_map<std::size_t, i64> value;
  FourierTable table(spec.level, spec.weight, spec.disc_bound, spec.disc_bound);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    auto [root, parity] = uf.find(i);
    auto it = value.find(root);
    if (it == value.end()) {
      i64 v = static_cast<i64>(rng() % span) - spec.value_range;
      if (spec.zero_one_in > 0 && rng() % static_cast<std::uint64_t>(spec.zero_one_in) == 0) v = 0;
      if (uf.dead(root)) v = 0;
      it = value.emplace(root, v).first;
    }
    const i64 v = parity ? -it->second : it->second;
    if (v) table.set(keys[i], Rational(static_cast<long>(v)));
  }
  table.fricke_sign = spec.fricke_sign;
  table.provenance.push_back("random seed=" + std::to_string(spec.seed) + " window=" + std::to_string(spec.window));
  return table;
}

}  // namespace pfes
