#pragma once

// Binary quadratic form utilities and half-integral weight q-series:
// fundamental discriminants, prime representation by the form attached to an
// index, the Skoruppa map on one Fourier-Jacobi slice, the Saha level
// conditions, theta-series shape detection, and square-free scanning.

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pfes/character.hpp"
#include "pfes/fourier.hpp"

namespace pfes {

/// Truncated q-expansion sum_{D >= 0} a(D) q^D of weight k - 1/2 (half) or k.
struct QSeries {
  int k = 2;
  bool half = true;
  i64 level = 4;
  DirichletCharacter character = DirichletCharacter::trivial(1);
  i64 bound = 0;  // coefficients are exact for 0 <= D <= bound
  std::map<i64, Rational> coeffs;

  QSeries() = default;
  QSeries(int weight, bool half_integral, i64 lvl, DirichletCharacter chi, i64 b)
      : k(weight), half(half_integral), level(lvl), character(std::move(chi)), bound(b) {
    require(level >= 1, ErrorKind::invariant_error, "q-series level must be positive");
    require(!half || level % 4 == 0, ErrorKind::invariant_error, "half-integral weight needs 4 | level");
    require(bound >= 0, ErrorKind::invariant_error, "q-series bound must be non-negative");
  }

  const Rational& at(i64 d) const {
    static const Rational zero = 0;
    auto it = coeffs.find(d);
    return it == coeffs.end() ? zero : it->second;
  }

  void set(i64 d, const Rational& v) {
    require(d >= 0 && d <= bound, ErrorKind::invariant_error,
            "exponent " + std::to_string(d) + " outside [0, " + std::to_string(bound) + "]");
    if (v == 0)
      coeffs.erase(d);
    else
      coeffs[d] = v;
  }

  bool is_zero() const { return coeffs.empty(); }

  /// "k-1/2" or "k".
  std::string weight_tag() const { return half ? std::to_string(k) + "-1/2" : std::to_string(k); }
};

/// Square-free d = 1 (mod 4), or d = 4d' with d' square-free and d' = 2, 3 (mod 4).
inline bool is_fundamental(i64 d) {
  const i64 r = mod(d, 4);
  if (r == 1) return is_squarefree(abs64(d));
  if (r != 0) return false;
  const i64 e = d / 4;
  const i64 re = mod(e, 4);
  return (re == 2 || re == 3) && is_squarefree(abs64(e));
}

struct PrimeRepresentation {
  i64 c = 0;
  i64 d = 0;
  IntMat2 a;  // [[a, Nc], [b, d]], det 1, in Gamma^0(N)
  i64 q = 0;
  QuadIndex image;  // tA S' A with S' the Fricke partner (m, -r, Nn)
};

/// q = c^2 N m - c d r + d^2 n for the index T = (n, r, mN).
inline i64 represented_value(const QuadIndex& t, i64 level, i64 c, i64 d) {
  const i128 m = t.mn / level;
  return narrow(static_cast<i128>(c) * c * level * m - static_cast<i128>(c) * d * t.r + static_cast<i128>(d) * d * t.n);
}

/// Visits (c, d) with d >= 1 first for c >= 0, then for c < 0, each pass by
/// increasing max(|c|, d), then c, then d.
template <class Visit>
bool for_each_coefficient_pair(i64 search_bound, Visit&& visit) {
  for (int pass = 0; pass < 2; ++pass)
    for (i64 s = 1; s <= search_bound; ++s) {
      const i64 c_lo = pass == 0 ? 0 : -s, c_hi = pass == 0 ? s : -1;
      for (i64 c = c_lo; c <= c_hi; ++c)
        for (i64 d = 1; d <= s; ++d)
          if (std::max(abs64(c), d) == s && visit(c, d)) return true;
    }
  return false;
}

inline PrimeRepresentation represent_prime(const QuadIndex& t, i64 level, const std::set<i64>& exclusions,
                                           i64 search_bound) {
  require(is_valid_index(t, level), ErrorKind::invariant_error, "index " + to_string(t) + ": " + index_violation(t, level));
  require(content(t) == 1, ErrorKind::not_primitive,
          "index " + to_string(t) + " has content " + std::to_string(content(t)));
  const QuadIndex partner = fricke_index(t, level);
  std::optional<PrimeRepresentation> found;
  for_each_coefficient_pair(search_bound, [&](i64 c, i64 d) {
    if (std::gcd(checked_mul(level, c), d) != 1) return false;
    const i64 q = represented_value(t, level, c, d);
    if (q <= 2 || !is_prime(q) || level % q == 0 || exclusions.count(q)) return false;
    // a d - N c b = 1, with b reduced into [0, d).
    const i64 nc = checked_mul(level, c);
    auto [g, x, y] = ext_gcd(d, -nc);
    require(g == 1, ErrorKind::internal, "coprime pair without Bezout solution");
    const i64 shift = (mod(y, d) - y) / d;
    const i64 b = y + shift * d;
    const i64 a = x + shift * nc;
    const IntMat2 am{a, nc, b, d};
    require(am.det() == 1 && mod(b, d) == b, ErrorKind::internal, "completion to SL2 failed");
    const QuadIndex image = congruence(partner, am);
    require(image.mn == checked_mul(level, q), ErrorKind::internal, "bottom-right entry is not N q");
    found = PrimeRepresentation{c, d, am, q, image};
    return true;
  });
  require(found.has_value(), ErrorKind::not_found,
          "no prime represented with |c|, |d| <= " + std::to_string(search_bound));
  return *found;
}

/// h(D) = sum over 0 <= mu < 2m, D = -mu^2 (mod 4m) of chi(mu) c((D + mu^2)/4m, mu).
inline QSeries skoruppa_map(const JacobiSlice& phi, const DirichletCharacter& chi, int k) {
  const i64 m = phi.index;
  require(is_squarefree(m), ErrorKind::not_squarefree, "Jacobi index " + std::to_string(m) + " is not square-free");
  require((2 * m) % chi.modulus() == 0, ErrorKind::bad_modulus,
          "character modulus " + std::to_string(chi.modulus()) + " does not divide 2m = " + std::to_string(2 * m));
  require(chi.parity() == (k % 2 == 0 ? 1 : -1), ErrorKind::parity_mismatch,
          "chi(-1) = " + std::to_string(chi.parity()) + " but (-1)^k = " + std::to_string(k % 2 == 0 ? 1 : -1));
  require(chi.is_real(), ErrorKind::unsupported_character, "Skoruppa map needs a real character");
  const i64 f = chi.modulus();
  QSeries out(k, true, checked_mul(4, lcm64(m, checked_mul(f, f))), chi, phi.bound);
  for (const auto& [key, value] : phi.coeffs) {
    const auto [n, r] = key;
    if (r < 0 || r >= 2 * m) continue;
    const int x = chi.real_value(r);
    if (x == 0) continue;
    const i64 d = narrow(4 * static_cast<i128>(n) * m - static_cast<i128>(r) * r);
    if (d < 0 || d > out.bound) continue;
    out.set(d, out.at(d) + value * x);
  }
  return out;
}

struct SahaVerdict {
  bool ok = true;
  std::optional<i64> failing_prime;
  std::string reason;
};

/// Conditions on f in S_{k+1/2}(4N, chi): (i) N is cube-free; (ii) chi_p is
/// nontrivial at every odd p with p^2 | N.
inline SahaVerdict saha_conditions(i64 level_total, const DirichletCharacter& chi) {
  if (level_total <= 0 || level_total % 4 != 0) return {false, std::nullopt, "level is not divisible by 4"};
  const i64 n = level_total / 4;
  for (const auto& pp : factorize(n)) {
    if (pp.exponent >= 3)
      return {false, pp.prime, std::to_string(pp.prime) + "^3 divides N = " + std::to_string(n)};
    if (pp.prime != 2 && pp.exponent == 2 && chi.component(pp.prime).is_trivial())
      return {false, pp.prime,
              std::to_string(pp.prime) + "^2 divides N = " + std::to_string(n) + " and chi_" +
                  std::to_string(pp.prime) + " is trivial"};
  }
  return {};
}

/// sum_{m >= 1} m psi(m) q^{t m^2} truncated at `bound`, weight 3/2,
/// level 4 r^2 t with r the modulus of psi, character psi_t.
inline QSeries theta_series(i64 t, const DirichletCharacter& psi, i64 bound) {
  require(t >= 1, ErrorKind::invalid_argument, "theta parameter t must be positive");
  require(psi.is_real() && psi.parity() == -1, ErrorKind::unsupported_character, "theta series needs a real odd character");
  const i64 r = psi.modulus();
  QSeries f(2, true, checked_mul(4, checked_mul(checked_mul(r, r), t)), theta_twist(psi, t), bound);
  for (i64 m = 1; checked_mul(t, m * m) <= bound; ++m)
    if (const int v = psi.real_value(m)) f.set(t * m * m, Rational(static_cast<long>(m * v)));
  return f;
}

struct ThetaMatch {
  i64 t = 0;
  i64 r = 0;
  DirichletCharacter psi = DirichletCharacter::trivial(1);
  Rational scale;  // f = scale * theta
  /// Always "consistent-to-bound": a finite truncation never proves the shape.
  std::string status = "consistent-to-bound";
};

/// Tests f against c * sum m psi(m) q^{t m^2}. Moduli r are those with
/// 4 r^2 t | level, or all r <= max_modulus when max_modulus > 0.
inline std::optional<ThetaMatch> theta_shape_detect(const QSeries& f, i64 max_modulus = 0) {
  require(!f.is_zero(), ErrorKind::zero_series, "series vanishes up to its bound");
  const i64 t = f.coeffs.begin()->first;
  if (t <= 0) return std::nullopt;
  const Rational scale = f.coeffs.begin()->second;
  // psi(m) read off the coefficients, which must sit on t m^2.
  std::map<i64, int> psi;
  for (const auto& [d, v] : f.coeffs) {
    if (d % t != 0) return std::nullopt;
    const i64 m = static_cast<i64>(std::llround(std::sqrt(static_cast<long double>(d / t))));
    if (m * m != d / t) return std::nullopt;
    const Rational ratio = v / (scale * static_cast<long>(m));
    if (ratio != 1 && ratio != -1) return std::nullopt;
    psi[m] = ratio == 1 ? 1 : -1;
  }
  const i64 m_max = static_cast<i64>(std::floor(std::sqrt(static_cast<long double>(f.bound / t))));
  auto matches = [&](const DirichletCharacter& chi) {
    for (i64 m = 1; m <= m_max; ++m) {
      auto it = psi.find(m);
      if (chi.real_value(m) != (it == psi.end() ? 0 : it->second)) return false;
    }
    return true;
  };
  std::vector<i64> moduli;
  if (max_modulus > 0) {
    for (i64 r = 1; r <= max_modulus; ++r) moduli.push_back(r);
  } else if (f.level % (4 * t) == 0) {
    const i64 rest = f.level / (4 * t);
    for (i64 r = 1; r * r <= rest; ++r)
      if (rest % (r * r) == 0) moduli.push_back(r);
  }
  for (i64 r : moduli)
    for (const auto& chi : real_characters(r, -1))
      if (matches(chi)) return ThetaMatch{t, r, chi, scale};
  return std::nullopt;
}

/// Square-free D <= bound with a(D) != 0 and gcd(D, l) = 1 for every l in S.
inline std::vector<i64> squarefree_scan(const QSeries& f, const std::set<i64>& coprime_to) {
  std::vector<i64> out;
  for (const auto& [d, v] : f.coeffs) {
    if (d <= 0 || d > f.bound || !is_squarefree(d)) continue;
    bool ok = true;
    for (i64 l : coprime_to)
      if (std::gcd(d, l) != 1) ok = false;
    if (ok) out.push_back(d);
  }
  return out;
}

/// Certified nonzero coefficients with fundamental discriminant, by |disc|.
inline std::vector<std::pair<QuadIndex, Rational>> fundamental_search(const FourierTable& f) {
  std::vector<std::pair<QuadIndex, Rational>> out;
  for (const auto& [t, v] : f.entries()) {
    if (!f.certified(t) || !is_fundamental(t.disc())) continue;
    require(content(t) == 1, ErrorKind::internal, "fundamental discriminant on an imprimitive index " + to_string(t));
    out.emplace_back(t, v);
  }
  return out;
}

}  // namespace pfes
