#pragma once

// Termwise slash action, Gamma^0(N) equivariance, the Fricke coefficient
// symmetry, and Fourier-Jacobi / theta-component extraction.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pfes/fourier_table.hpp"
#include "pfes/groups.hpp"

namespace pfes {

/// a(T) e(tr(TZ)) |_k g  =  scale * e(phase) * e(tr(index Z)).
struct SlashTerm {
  Mat2 index;
  Rational scale;
  Rational phase;  // in [0, 1)
};

inline SlashTerm slash_term(const ParabolicParts& parts, const Mat2& t, int weight) {
  require(parts.multiplier > 0, ErrorKind::invalid_argument, "slash_term needs a positive multiplier");
  const Mat2 d_inv = parts.d.inverse();
  SlashTerm out;
  out.index = parts.multiplier * d_inv * t * d_inv.transpose();
  out.scale = pow(parts.multiplier, weight) * pow(parts.d.determinant(), -weight);
  out.phase = frac_part((t * parts.b * d_inv).trace());
  return out;
}

inline SlashTerm slash_term(const SimilitudeMatrix& g, const Mat2& t, int weight) {
  return slash_term(block_parabolic_parts(g), t, weight);
}

inline SlashTerm slash_term(const SimilitudeMatrix& g, const QuadIndex& t, int weight) {
  return slash_term(block_parabolic_parts(g), t.as_matrix(), weight);
}

/// The phase tr(T B D^-1) as an integer linear form in (n, r, mn):
/// phase = (n*cn + r*cr + mn*cm) / den  (mod 1).
struct PhaseForm {
  i64 cn = 0, cr = 0, cm = 0;
  i64 den = 1;

  /// Numerator of the phase reduced into [0, den).
  i64 numerator(const QuadIndex& t) const {
    const i128 v = static_cast<i128>(t.n) * cn + static_cast<i128>(t.r) * cr + static_cast<i128>(t.mn) * cm;
    i128 m = v % den;
    if (m < 0) m += den;
    return static_cast<i64>(m);
  }

  Rational eval(const QuadIndex& t) const { return make_rational(numerator(t), den); }
};

inline PhaseForm phase_form(const ParabolicParts& parts) {
  const Mat2 x = parts.b * parts.d.inverse();
  const Rational un = x(0, 0);
  const Rational ur = (x(0, 1) + x(1, 0)) / 2;
  const Rational um = x(1, 1);
  Integer den = 1;
  for (const Rational* v : {&un, &ur, &um}) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v->get_den_mpz_t());
  PhaseForm f;
  f.den = to_i64(den);
  // Only the residues mod den matter.
  auto residue = [&](const Rational& v) {
    Integer num = v.get_num() * (den / v.get_den());
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return to_i64(r);
  };
  f.cn = residue(un);
  f.cr = residue(ur);
  f.cm = residue(um);
  return f;
}

/// tA T A for A in Gamma^0(N).
inline QuadIndex gamma0_transform(const QuadIndex& t, const Mat2& a, i64 level) {
  require(is_member(a, GroupPattern::gamma_upper0(level)), ErrorKind::not_in_group,
          "matrix is not in Gamma^0(" + std::to_string(level) + ")");
  return congruence(t, to_int_matrix(a));
}

inline std::vector<Mat2> default_gamma0_generators(i64 level) {
  return {Mat2{{1, Rational(static_cast<long>(level))}, {0, 1}}, Mat2{{1, 0}, {1, 1}}};
}

/// Finite box n <= max_n, mn <= max_mn. Windows of the form
/// (E, N*E) are stable under the Fricke index map.
struct IndexWindow {
  i64 max_n;
  i64 max_mn;

  static IndexWindow fricke_stable(i64 e, i64 level) { return {e, checked_mul(e, level)}; }
  bool contains(const QuadIndex& t) const { return t.n <= max_n && t.mn <= max_mn; }
};

struct EquivarianceViolation {
  QuadIndex index;
  std::size_t generator;
  QuadIndex image;  // tA index A
  Rational value;
  Rational image_value;
};

struct EquivarianceReport {
  std::vector<EquivarianceViolation> violations;
  /// One canonical representative per orbit containing a violation.
  std::vector<QuadIndex> orbits;
  bool ok() const { return violations.empty(); }
};

namespace detail {

inline IntMat2 inverse_sl2(const IntMat2& a) { return {a.d, -a.b, -a.c, a.a}; }

}  // namespace detail

/// Compares a(T) with a(tA T A) for every key T and every generator A (and its
/// inverse) whose image stays in the certified range and, if given, the window.
inline EquivarianceReport check_equivariance(const FourierTable& f, const std::vector<Mat2>& generators,
                                             std::optional<IndexWindow> window = std::nullopt) {
  std::vector<IntMat2> moves;
  for (const auto& g : generators) {
    require(is_member(g, GroupPattern::gamma_upper0(f.level())), ErrorKind::not_in_group,
            "equivariance generator is not in Gamma^0(N)");
    const IntMat2 a = to_int_matrix(g);
    moves.push_back(a);
    moves.push_back(detail::inverse_sl2(a));
  }
  auto inside = [&](const QuadIndex& t) { return f.certified(t) && (!window || window->contains(t)); };

  EquivarianceReport report;
  std::set<std::pair<QuadIndex, QuadIndex>> seen;
  for (const auto& [t, value] : f.entries()) {
    if (!inside(t)) continue;
    for (std::size_t i = 0; i < moves.size(); ++i) {
      const QuadIndex image = congruence(t, moves[i]);
      if (!inside(image)) continue;
      const Rational& other = f.at(image);
      if (other == value) continue;
      auto key = std::minmax(t, image);
      if (!seen.insert({key.first, key.second}).second) continue;
      report.violations.push_back({t, i / 2, image, value, other});
    }
  }
  if (report.violations.empty()) return report;

  // Group violations by orbit: breadth-first closure inside the window when
  // one is given, otherwise the connected components of the violating pairs.
  std::set<QuadIndex, CanonicalLess> reps;
  std::unordered_set<QuadIndex, QuadIndexHash> assigned;
  std::unordered_map<QuadIndex, std::vector<QuadIndex>, QuadIndexHash> adjacency;
  for (const auto& v : report.violations) {
    adjacency[v.index].push_back(v.image);
    adjacency[v.image].push_back(v.index);
  }
  for (const auto& v : report.violations) {
    if (assigned.count(v.index)) continue;
    QuadIndex best = v.index;
    std::deque<QuadIndex> queue{v.index};
    std::unordered_set<QuadIndex, QuadIndexHash> visited{v.index};
    while (!queue.empty()) {
      const QuadIndex cur = queue.front();
      queue.pop_front();
      if (CanonicalLess{}(cur, best)) best = cur;
      std::vector<QuadIndex> next;
      if (window) {
        for (const auto& m : moves) next.push_back(congruence(cur, m));
      } else if (auto it = adjacency.find(cur); it != adjacency.end()) {
        next = it->second;
      }
      for (const auto& nb : next) {
        if (window && !inside(nb)) continue;
        if (visited.insert(nb).second) queue.push_back(nb);
      }
    }
    for (const auto& x : visited) assigned.insert(x);
    reps.insert(best);
  }
  report.orbits.assign(reps.begin(), reps.end());
  return report;
}

/// (n, r, mn) -> (mn/N, -r, n N): the index map of the Fricke symmetry.
inline QuadIndex fricke_index(const QuadIndex& t, i64 level) {
  require(level >= 1 && t.mn % level == 0, ErrorKind::invariant_error,
          "index " + to_string(t) + " is not valid at level " + std::to_string(level));
  return {t.mn / level, -t.r, checked_mul(t.n, level)};
}

/// The sign eps with a(T) = eps a(fricke(T)) on the certified range, if one
/// exists. The zero table reports +1.
inline std::optional<int> fricke_eigen_check(const FourierTable& f) {
  bool plus = true, minus = true;
  for (const auto& [t, value] : f.entries()) {
    if (!f.certified(t)) continue;
    const Rational& partner = f.at(fricke_index(t, f.level()));
    if (partner != value) plus = false;
    if (partner != -value) minus = false;
    if (!plus && !minus) return std::nullopt;
  }
  if (plus) return 1;
  return -1;
}

/// Coefficients c(n, r) of one Fourier-Jacobi coefficient phi_m.
struct JacobiSlice {
  i64 index = 1;  // m, the bottom-right entry
  int weight = 0;
  i64 bound = 0;  // c(n, r) is exact for 4nm - r^2 <= bound
  bool structural_zero = false;  // N does not divide m
  std::map<std::pair<i64, i64>, Rational> coeffs;  // (n, r) -> c(n, r)

  const Rational& at(i64 n, i64 r) const {
    static const Rational zero = 0;
    auto it = coeffs.find({n, r});
    return it == coeffs.end() ? zero : it->second;
  }
};

inline JacobiSlice fj_extract(const FourierTable& f, i64 m) {
  require(m >= 1, ErrorKind::invalid_argument, "Jacobi index must be positive");
  JacobiSlice slice;
  slice.index = m;
  slice.weight = f.weight();
  slice.bound = f.certified_bound();
  if (m % f.level() != 0) {
    slice.structural_zero = true;
    return slice;
  }
  for (const auto& [t, value] : f.entries())
    if (t.mn == m && f.certified(t)) slice.coeffs[{t.n, t.r}] = value;
  return slice;
}

/// h_mu(D) for 0 <= mu < 2m, D = 4nm - mu^2 > 0.
struct ThetaComponents {
  i64 index = 1;
  std::vector<std::map<i64, Rational>> h;
};

/// Reads h_mu(D) = c((D + mu^2)/4m, mu) from the representatives with
/// 0 <= r < 2m.
inline ThetaComponents theta_components(const JacobiSlice& phi) {
  require(phi.index >= 1, ErrorKind::invalid_argument, "Jacobi index must be positive");
  ThetaComponents out;
  out.index = phi.index;
  out.h.resize(static_cast<std::size_t>(2 * phi.index));
  for (const auto& [key, value] : phi.coeffs) {
    const auto [n, r] = key;
    if (r < 0 || r >= 2 * phi.index) continue;
    const i64 d = narrow(4 * static_cast<i128>(n) * phi.index - static_cast<i128>(r) * r);
    if (d <= 0) continue;
    out.h[static_cast<std::size_t>(r)][d] = value;
  }
  return out;
}

}  // namespace pfes
