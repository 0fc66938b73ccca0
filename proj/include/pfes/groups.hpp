#pragma once

// Congruence patterns (paramodular, local K(p^n), Gamma^0(N), Gamma_0(N),
// SL2(Z)), left-coset comparisons, and the U(p) coset representatives
// together with their Siegel-parabolic rewrites.

#include <array>
#include <string>
#include <vector>

#include "pfes/arith.hpp"
#include "pfes/similitude.hpp"

namespace pfes {

enum class GroupKind { paramodular, local_k, gamma_upper0, gamma_lower0, sl2z };

struct GroupPattern {
  GroupKind kind = GroupKind::sl2z;
  i64 level = 1;
  i64 prime = 0;  // local_k only
  int exponent = 0;  // local_k only

  static GroupPattern paramodular(i64 n) { return make(GroupKind::paramodular, n, 0, 0); }
  static GroupPattern local_k(i64 p, int n) {
    require(is_prime(p) && n >= 0, ErrorKind::invalid_argument, "K(p^n) needs a prime p and n >= 0");
    return {GroupKind::local_k, checked_pow(p, static_cast<unsigned>(n)), p, n};
  }
  static GroupPattern gamma_upper0(i64 n) { return make(GroupKind::gamma_upper0, n, 0, 0); }
  static GroupPattern gamma_lower0(i64 n) { return make(GroupKind::gamma_lower0, n, 0, 0); }
  static GroupPattern sl2z() { return make(GroupKind::sl2z, 1, 0, 0); }

 private:
  static GroupPattern make(GroupKind kind, i64 n, i64 p, int e) {
    require(n >= 1, ErrorKind::invalid_argument, "level must be positive");
    return {kind, n, p, e};
  }
};

namespace detail {

// Entry classes of the paramodular pattern:
//   Z   |  NZ  |  Z  |  Z
//   Z   |  Z   |  Z  |  Z/N
//   Z   |  NZ  |  Z  |  Z
//   NZ  |  NZ  |  NZ |  Z
enum class Slot { integral, multiple, fraction };

inline constexpr std::array<Slot, 16> kParamodularSlots = {
    Slot::integral, Slot::multiple, Slot::integral, Slot::integral,
    Slot::integral, Slot::integral, Slot::integral, Slot::fraction,
    Slot::integral, Slot::multiple, Slot::integral, Slot::integral,
    Slot::multiple, Slot::multiple, Slot::multiple, Slot::integral};

inline bool in_slot_global(const Rational& x, Slot slot, i64 level) {
  const Integer n(static_cast<long>(level));
  switch (slot) {
    case Slot::integral: return is_integer(x);
    case Slot::multiple: return is_integer(x) && mpz_divisible_p(x.get_num_mpz_t(), n.get_mpz_t());
    case Slot::fraction: return is_integer(Rational(x * n));
  }
  return false;
}

inline bool in_slot_local(const Rational& x, Slot slot, i64 p, int n) {
  const int v = valuation(x, p);
  switch (slot) {
    case Slot::integral: return v >= 0;
    case Slot::multiple: return v >= n;
    case Slot::fraction: return v >= -n;
  }
  return false;
}

}  // namespace detail

/// Degree-2 membership. Paramodular and K(p^n) require multiplier exactly 1.
inline bool is_member(const Mat4& g, const GroupPattern& pattern) {
  if (pattern.kind != GroupKind::paramodular && pattern.kind != GroupKind::local_k) return false;
  for (std::size_t i = 0; i < 16; ++i) {
    const Rational& x = g.entries()[i];
    const auto slot = detail::kParamodularSlots[i];
    const bool ok = pattern.kind == GroupKind::paramodular
                        ? detail::in_slot_global(x, slot, pattern.level)
                        : detail::in_slot_local(x, slot, pattern.prime, pattern.exponent);
    if (!ok) return false;
  }
  try {
    return multiplier(g) == 1;
  } catch (const Error&) {
    return false;
  }
}

/// Degree-1 membership: determinant 1, integral, and the congruence on the
/// upper-right (Gamma^0) or lower-left (Gamma_0) entry.
inline bool is_member(const Mat2& a, const GroupPattern& pattern) {
  if (!a.is_integral() || a.determinant() != 1) return false;
  const Integer n(static_cast<long>(pattern.level));
  switch (pattern.kind) {
    case GroupKind::sl2z: return true;
    case GroupKind::gamma_upper0: return mpz_divisible_p(a(0, 1).get_num_mpz_t(), n.get_mpz_t()) != 0;
    case GroupKind::gamma_lower0: return mpz_divisible_p(a(1, 0).get_num_mpz_t(), n.get_mpz_t()) != 0;
    default: return false;
  }
}

/// True iff g1 g2^-1 lies in the paramodular group of level N.
inline bool same_left_coset(const Mat4& g1, const Mat4& g2, i64 level) {
  return is_member(g1 * g2.inverse(), GroupPattern::paramodular(level));
}

/// Pairwise left-coset comparison over a fixed list of similitudes. Inverses
/// are computed once; each test builds g_i g_j^-1 entry by entry and stops at
/// the first entry outside the paramodular pattern.
class LeftCosetTester {
 public:
  LeftCosetTester(const std::vector<SimilitudeMatrix>& reps, i64 level) : level_(level) {
    reps_.reserve(reps.size());
    inverses_.reserve(reps.size());
    for (const auto& g : reps) {
      reps_.push_back(g);
      inverses_.push_back(g.inverse());
    }
  }

  bool same(std::size_t i, std::size_t j) const {
    if (reps_[i].multiplier() != reps_[j].multiplier()) return false;
    const Mat4& x = reps_[i].matrix();
    const Mat4& y = inverses_[j].matrix();
    Rational entry;
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) {
        entry = 0;
        for (std::size_t k = 0; k < 4; ++k) entry += x(r, k) * y(k, c);
        if (!detail::in_slot_global(entry, detail::kParamodularSlots[r * 4 + c], level_)) return false;
      }
    return true;
  }

  std::size_t size() const { return reps_.size(); }

 private:
  i64 level_;
  std::vector<SimilitudeMatrix> reps_;
  std::vector<SimilitudeMatrix> inverses_;
};

/// alpha p^2 + beta N = p with the deterministic choice 0 <= beta < p
/// (hence 0 <= beta < p^2).
struct AlphaBeta {
  i64 alpha;
  i64 beta;
};

inline void require_exact_divisor(i64 p, i64 level) {
  require(p > 2 && is_prime(p), ErrorKind::bad_level, "p must be an odd prime, got " + std::to_string(p));
  require(level >= 1 && level % p == 0, ErrorKind::bad_level,
          std::to_string(p) + " does not divide N = " + std::to_string(level));
  require(level % (p * p) != 0, ErrorKind::bad_level,
          std::to_string(p) + "^2 divides N = " + std::to_string(level));
}

inline AlphaBeta solve_alpha_beta(i64 p, i64 level) {
  require(level % p == 0 && level % (p * p) != 0, ErrorKind::bad_level,
          "alpha p^2 + beta N = p has no solution unless p exactly divides N");
  const i64 cofactor = level / p;
  // alpha p + beta N' = 1  =>  beta = N'^-1 mod p.
  const i64 beta = *inverse_mod(cofactor, p);
  const i64 alpha = (1 - beta * cofactor) / p;
  AlphaBeta ab{alpha, beta};
  require(alpha * p * p + beta * level == p, ErrorKind::internal, "alpha/beta identity failed");
  return ab;
}

enum class UpFamily {
  siegel = 1,          // diag(1,1,p,p) n(a,b,c/p)
  klingen = 2,         // diag(p,1,1,p) n'(a,c/p)
  siegel_twisted = 3,  // diag(1,1,p,p) n(a,b,0) w_N
  klingen_twisted = 4  // diag(p,1,1,p) n'(a,0) w_N
};

struct UpCoset {
  UpFamily family;
  i64 a = 0;
  i64 b = 0;
  i64 c = 0;
  Mat4 original;
  SimilitudeMatrix final_rep;
};

namespace detail {

inline Rational q(i64 num, i64 den = 1) { return make_rational(num, den); }

inline Mat4 siegel_scaling(i64 p) { return Mat4::diagonal({1, 1, q(p), q(p)}); }
inline Mat4 klingen_scaling(i64 p) { return Mat4::diagonal({q(p), 1, 1, q(p)}); }

inline Mat4 involution_w(i64 level) {
  return Mat4{{1, 0, 0, 0}, {0, 0, 0, q(1, level)}, {0, 0, 1, 0}, {0, q(-level), 0, 0}};
}

inline Mat4 siegel_translation(const Rational& a, const Rational& b, const Rational& c) {
  return Mat4{{1, 0, a, b}, {0, 1, b, c}, {0, 0, 1, 0}, {0, 0, 0, 1}};
}

inline Mat4 klingen_translation(i64 a, const Rational& c) {
  return Mat4{{1, 0, 0, 0}, {q(-a), 1, 0, c}, {0, 0, 1, q(a)}, {0, 0, 0, 1}};
}

inline Mat4 fourth_family_original(i64 a, i64 p, i64 level) {
  return klingen_scaling(p) * klingen_translation(a, 0) * involution_w(level);
}

}  // namespace detail

/// The paramodular element g with g * (fourth-family representative) block
/// upper triangular; exists only when p exactly divides N.
inline Mat4 construct_g(i64 a, i64 p, i64 level) {
  require_exact_divisor(p, level);
  require(mod(a, p) != 0, ErrorKind::invalid_argument, "a must be a unit mod p");
  using detail::q;
  const i64 abar = *inverse_mod(a, p);
  const auto [alpha, beta] = solve_alpha_beta(p, level);
  const i64 n = level;
  const Mat4 g{{1, 0, q(-beta * abar), q(beta * (a * abar - 1), p)},
               {q(a * abar - 1, p), q(abar), 0, q(-alpha, n)},
               {q(a * n, p), q(n), q(alpha * p), q(-alpha * a)},
               {q(n * a), q(n * p), q(-n * beta), q(n * beta * a, p)}};
  require(is_member(g, GroupPattern::paramodular(n)), ErrorKind::internal,
          "constructed g is not paramodular");
  return g;
}

/// Block upper triangular form g * (fourth-family representative) for a != 0.
inline Mat4 twisted_klingen_parabolic(i64 a, i64 p, i64 level) {
  using detail::q;
  const i64 abar = *inverse_mod(a, p);
  const auto [alpha, beta] = solve_alpha_beta(p, level);
  return Mat4{{q(p), q(level * beta), q(-beta * abar), 0},
              {-1, q(alpha * p), 0, q(abar, level)},
              {0, 0, q(alpha * p), 1},
              {0, 0, q(-level * beta), q(p)}};
}

/// All p^3 + 2p^2 + p representatives of Gamma^para(N) diag(1,1,p,p) Gamma^para(N),
/// each paired with an equivalent Siegel-parabolic representative.
inline std::vector<UpCoset> build_up_cosets(i64 p, i64 level) {
  require_exact_divisor(p, level);
  using namespace detail;
  std::vector<UpCoset> out;
  out.reserve(static_cast<std::size_t>(p * p * p + 2 * p * p + p));
  const Mat4 w = involution_w(level);

  for (i64 a = 0; a < p; ++a)
    for (i64 b = 0; b < p; ++b)
      for (i64 c = 0; c < p; ++c) {
        Mat4 g = siegel_scaling(p) * siegel_translation(q(a), q(b), q(c, p));
        out.push_back({UpFamily::siegel, a, b, c, g, SimilitudeMatrix(g)});
      }

  for (i64 a = 0; a < p; ++a)
    for (i64 c = 0; c < p; ++c) {
      Mat4 g = klingen_scaling(p) * klingen_translation(a, q(c, p));
      out.push_back({UpFamily::klingen, a, 0, c, g, SimilitudeMatrix(g)});
    }

  for (i64 a = 0; a < p; ++a)
    for (i64 b = 0; b < p; ++b) {
      Mat4 orig = siegel_scaling(p) * siegel_translation(q(a), q(b), 0) * w;
      const i64 bn = b * level;
      Mat4 fin{{1, q(-bn), q(a), 0}, {0, q(-p), 0, 0}, {0, 0, q(p), 0}, {0, 0, q(-bn), -1}};
      out.push_back({UpFamily::siegel_twisted, a, b, 0, orig, SimilitudeMatrix(fin)});
    }

  for (i64 a = 0; a < p; ++a) {
    Mat4 orig = fourth_family_original(a, p, level);
    Mat4 fin = a == 0 ? Mat4::diagonal({q(p), q(p), 1, 1}) : twisted_klingen_parabolic(a, p, level);
    out.push_back({UpFamily::klingen_twisted, a, 0, 0, orig, SimilitudeMatrix(fin)});
  }

  for (const auto& rep : out) {
    require(rep.final_rep.multiplier() == p, ErrorKind::internal, "representative multiplier is not p");
    require(sub_block(rep.final_rep.matrix(), 1, 0).is_zero(), ErrorKind::internal,
            "final representative is not block upper triangular");
    require(same_left_coset(rep.final_rep.matrix(), rep.original, level), ErrorKind::internal,
            "final representative left a different coset");
  }
  return out;
}

inline std::size_t up_family_size(UpFamily family, i64 p) {
  switch (family) {
    case UpFamily::siegel: return static_cast<std::size_t>(p * p * p);
    case UpFamily::klingen:
    case UpFamily::siegel_twisted: return static_cast<std::size_t>(p * p);
    case UpFamily::klingen_twisted: return static_cast<std::size_t>(p);
  }
  return 0;
}

}  // namespace pfes
