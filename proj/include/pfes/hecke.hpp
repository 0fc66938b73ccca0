#pragma once

// Hecke actions on Fourier coefficients.
//
// up_apply evaluates the closed U(p) relation (p exactly dividing N) index by
// index; up_oracle recomputes the same operator by slashing every coset
// representative termwise and evaluating the exponential sums in Z[zeta_p].
// The two paths share no term-assembly code. evdokimov_apply evaluates the
// T(p) + T(p^2) relation at p not dividing N.

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pfes/fourier.hpp"

namespace pfes {

enum class HeckeMode { up, tp_plus_tp2 };

/// Where the "(if p|m)", "(if p|n)", "(if p|r)" guards of the U(p) relation
/// are tested: on the coefficient's argument index (matches the coset
/// computation) or on the output index T as the relation is usually printed.
enum class UpConditionSite { argument, output };

struct HeckeParams {
  i64 p = 0;
  i64 level = 1;
  int weight = 2;
  HeckeMode mode = HeckeMode::up;
  /// R(N) for the T(p)+T(p^2) relation; nullopt selects the default set.
  std::optional<std::vector<Mat2>> reps;
  GroupKind rep_pattern = GroupKind::gamma_lower0;
  UpConditionSite condition_site = UpConditionSite::argument;

  static HeckeParams up(i64 p, i64 level, int weight) {
    HeckeParams h;
    h.p = p;
    h.level = level;
    h.weight = weight;
    h.mode = HeckeMode::up;
    return h;
  }

  static HeckeParams tp(i64 p, i64 level, int weight, std::optional<std::vector<Mat2>> reps = std::nullopt) {
    HeckeParams h;
    h.p = p;
    h.level = level;
    h.weight = weight;
    h.mode = HeckeMode::tp_plus_tp2;
    h.reps = std::move(reps);
    return h;
  }
};

/// W in SL2(Z) with W = [[0,-1],[1,0]] mod p and W = I mod N.
inline IntMat2 crt_involution(i64 p, i64 level) {
  require(std::gcd(p, level) == 1, ErrorKind::bad_level, "p must not divide N");
  const i64 pn = checked_mul(p, level);
  const i64 c = crt(1, p, 0, level);
  i64 d = crt(0, p, 1, level);
  while (std::gcd(c, d) != 1) d += pn;
  auto [g, x, y] = ext_gcd(d, -c);  // a d - b c = 1 with a = x, b = y
  require(g == 1, ErrorKind::internal, "CRT involution: bottom row not primitive");
  i64 a = x, b = y;
  // Adjust by a row operation [[1,s],[0,1]] so the top row has the right residues.
  const i64 s = crt(mod(0 - a, p), p, mod(0 - b, level), level);
  a = checked_add(a, checked_mul(s, c));
  b = checked_add(b, checked_mul(s, d));
  const IntMat2 w{a, b, c, d};
  require(w.det() == 1 && mod(a, p) == 0 && mod(b + 1, p) == 0 && mod(c - 1, p) == 0 && mod(d, p) == 0 &&
              mod(a - 1, level) == 0 && mod(b, level) == 0 && mod(c, level) == 0 && mod(d - 1, level) == 0,
          ErrorKind::internal, "CRT involution failed its congruences");
  return w;
}

/// Default R(N): [[1,0],[N j,1]] for 0 <= j < p, plus the CRT involution.
/// All members lie in Gamma_0(N).
inline std::vector<Mat2> default_evdokimov_reps(i64 p, i64 level) {
  std::vector<Mat2> out;
  for (i64 j = 0; j < p; ++j) out.push_back(IntMat2{1, 0, checked_mul(level, j), 1}.as_matrix());
  out.push_back(crt_involution(p, level).as_matrix());
  return out;
}

inline std::vector<Mat2> resolved_reps(const HeckeParams& h) {
  std::vector<Mat2> reps = h.reps ? *h.reps : default_evdokimov_reps(h.p, h.level);
  require(!reps.empty(), ErrorKind::empty_reps, "R(N) is empty");
  const GroupPattern pattern = h.rep_pattern == GroupKind::gamma_upper0 ? GroupPattern::gamma_upper0(h.level)
                                                                         : GroupPattern::gamma_lower0(h.level);
  for (const auto& u : reps)
    require(is_member(u, pattern), ErrorKind::not_in_group, "R(N) member outside the chosen pattern");
  return reps;
}

inline void validate(const HeckeParams& h) {
  require(h.weight >= 2, ErrorKind::weight_too_small, "weight must be at least 2");
  if (h.mode == HeckeMode::up) {
    require_exact_divisor(h.p, h.level);
  } else {
    require(h.p > 2 && is_prime(h.p), ErrorKind::bad_level, "p must be an odd prime");
    require(h.level >= 1 && h.level % h.p != 0, ErrorKind::bad_level, "p must not divide N");
    (void)resolved_reps(h);
  }
}

enum class TermKind {
  scaled_up,     // a(pT)
  scaled_down,   // a(T/p)
  atkin_lehner,  // -a((1/p) M T tM)
  siegel_sum,    // p|m family
  klingen_sum,   // p|n family
  ramified,      // p|r family
  evdokimov,     // U in R(N)
};

inline std::string_view to_string(TermKind k) {
  switch (k) {
    case TermKind::scaled_up: return "a(pT)";
    case TermKind::scaled_down: return "a(T/p)";
    case TermKind::atkin_lehner: return "a(M T tM / p)";
    case TermKind::siegel_sum: return "p|m family";
    case TermKind::klingen_sum: return "p|n family";
    case TermKind::ramified: return "p|r family";
    case TermKind::evdokimov: return "R(N) family";
  }
  return "?";
}

enum class Guard { none, p_divides_m, p_divides_n, p_divides_r };

/// One summand factor * a(F, arg(T)) of a coefficient relation, independent of T.
struct TermShape {
  TermKind kind;
  Rational factor;
  Guard guard = Guard::none;
  IntMat2 y{};  // arg = (1/p) Y T tY for conjugating kinds
};

/// The argument of a summand at a given T: X / divisor, X an integer triple.
struct TermArgument {
  QuadIndex numerator;
  i64 divisor = 1;

  /// |disc| of the argument times divisor^2.
  i64 scaled_disc() const { return numerator.disc(); }

  std::optional<QuadIndex> resolve(i64 level) const {
    if (numerator.n % divisor || numerator.r % divisor || numerator.mn % divisor) return std::nullopt;
    QuadIndex t{numerator.n / divisor, numerator.r / divisor, numerator.mn / divisor};
    if (!is_valid_index(t, level)) return std::nullopt;
    return t;
  }
};

inline std::vector<TermShape> up_term_shapes(const HeckeParams& h) {
  const i64 p = h.p, n = h.level;
  const auto [alpha, beta] = solve_alpha_beta(p, n);
  const Rational rp = Rational(static_cast<long>(p));
  const IntMat2 m{alpha * p, 1, -n * beta, p};
  std::vector<TermShape> out;
  out.push_back({TermKind::scaled_up, pow(rp, 3 - h.weight)});
  out.push_back({TermKind::scaled_down, pow(rp, h.weight)});
  out.push_back({TermKind::atkin_lehner, -1, Guard::none, m});
  for (i64 b = 0; b < p; ++b) out.push_back({TermKind::siegel_sum, rp, Guard::p_divides_m, IntMat2{1, b, 0, p}});
  const Rational sign = h.weight % 2 == 0 ? 1 : -1;
  for (i64 b = 0; b < p; ++b)
    out.push_back({TermKind::klingen_sum, sign * rp, Guard::p_divides_n, IntMat2{p, 0, -b * n, -1}});
  out.push_back({TermKind::ramified, rp, Guard::p_divides_r, m});
  return out;
}

inline std::vector<TermShape> evdokimov_term_shapes(i64 p, int weight, const std::vector<Mat2>& reps) {
  const Rational rp = Rational(static_cast<long>(p));
  std::vector<TermShape> out;
  out.push_back({TermKind::scaled_up, 1});
  out.push_back({TermKind::scaled_down, pow(rp, 2 * weight - 3)});
  const IntMat2 lift{1, 0, 0, p};
  for (const auto& u : reps) out.push_back({TermKind::evdokimov, pow(rp, weight - 2), Guard::none, lift * to_int_matrix(u)});
  return out;
}

inline TermArgument term_argument(const TermShape& s, const QuadIndex& t, i64 p) {
  switch (s.kind) {
    case TermKind::scaled_up: return {{checked_mul(p, t.n), checked_mul(p, t.r), checked_mul(p, t.mn)}, 1};
    case TermKind::scaled_down: return {t, p};
    default: return {conjugate(s.y, t), p};
  }
}

/// Every T whose argument under s could equal the index `source`.
inline std::optional<QuadIndex> term_preimage(const TermShape& s, const QuadIndex& source, i64 p) {
  QuadIndex x;
  switch (s.kind) {
    case TermKind::scaled_up:
      if (source.n % p || source.r % p || source.mn % p) return std::nullopt;
      return QuadIndex{source.n / p, source.r / p, source.mn / p};
    case TermKind::scaled_down:
      return QuadIndex{checked_mul(p, source.n), checked_mul(p, source.r), checked_mul(p, source.mn)};
    default: {
      // (1/p) Y T tY = S  <=>  T = (1/p) adj(Y) S t(adj Y) when det Y = +-p.
      const IntMat2 adj{s.y.d, -s.y.b, -s.y.c, s.y.a};
      x = conjugate(adj, source);
      if (x.n % p || x.r % p || x.mn % p) return std::nullopt;
      return QuadIndex{x.n / p, x.r / p, x.mn / p};
    }
  }
}

/// Running tally of the discriminant bookkeeping check on evaluated terms.
struct TermAudit {
  std::size_t terms = 0;
  std::size_t mismatches = 0;
};

/// disc(arg) must be p^2 d, d / p^2, or d according to the term kind.
inline bool bookkeeping_holds(const TermShape& s, const TermArgument& arg, const QuadIndex& t, i64 p) {
  const i128 d = t.disc();
  const i128 scaled = arg.scaled_disc();  // disc(arg) * divisor^2
  const i128 div2 = static_cast<i128>(arg.divisor) * arg.divisor;
  switch (s.kind) {
    case TermKind::scaled_up: return scaled == d * p * p * div2;
    case TermKind::scaled_down: return scaled * p * p == d * div2;
    default: return scaled == d * div2;
  }
}

namespace detail {

inline bool guard_holds(Guard g, const QuadIndex& x, i64 level, i64 p) {
  switch (g) {
    case Guard::none: return true;
    case Guard::p_divides_m: return x.mn % level == 0 && (x.mn / level) % p == 0;
    case Guard::p_divides_n: return x.n % p == 0;
    case Guard::p_divides_r: return x.r % p == 0;
  }
  return false;
}

inline i64 shrink_bound(i64 bound, i64 p) {
  const i64 out = bound / (p * p);
  require(out >= 1, ErrorKind::invalid_argument,
          "certified range collapses: bound " + std::to_string(bound) + " < p^2");
  return out;
}

/// Evaluates sum factor * a(arg(T)) over the shapes for all T reachable from
/// the input support within the shrunken certified range.
inline FourierTable apply_relation(const FourierTable& f, const std::vector<TermShape>& shapes, i64 p,
                                   UpConditionSite site, TermAudit* audit) {
  const i64 level = f.level();
  const i64 bound = shrink_bound(f.certified_bound(), p);
  FourierTable out(level, f.weight(), bound, bound);

  std::set<QuadIndex, CanonicalLess> candidates;
  for (const auto& [src, value] : f.entries())
    for (const auto& s : shapes)
      if (auto t = term_preimage(s, src, p); t && is_valid_index(*t, level) && t->abs_disc() <= bound)
        candidates.insert(*t);

  for (const auto& t : candidates) {
    Rational total = 0;
    for (const auto& s : shapes) {
      const TermArgument arg = term_argument(s, t, p);
      const bool bookkept = bookkeeping_holds(s, arg, t, p);
      if (audit) {
        ++audit->terms;
        if (!bookkept) ++audit->mismatches;
      }
      require(bookkept, ErrorKind::internal, "discriminant bookkeeping violated at " + to_string(t));
      const auto x = arg.resolve(level);
      if (!x) continue;  // convention: a(F, X/p) = 0 unless p | cont X
      if (site == UpConditionSite::output ? !guard_holds(s.guard, t, level, p)
                                          : !guard_holds(s.guard, *x, level, p))
        continue;
      const Rational& a = f.at(*x);
      if (a != 0) total += s.factor * a;
    }
    if (total != 0) out.set(t, total);
  }
  return out;
}

}  // namespace detail

/// The closed-form U(p) relation evaluated on F.
inline FourierTable up_apply(const FourierTable& f, const HeckeParams& h, TermAudit* audit = nullptr) {
  require(h.mode == HeckeMode::up, ErrorKind::invalid_argument, "up_apply needs U(p) parameters");
  validate(h);
  require(f.level() == h.level && f.weight() == h.weight, ErrorKind::invalid_argument,
          "table level/weight do not match the operator");
  return detail::apply_relation(f, up_term_shapes(h), h.p, h.condition_site, audit);
}

/// The T(p) + T(p^2) relation evaluated on F.
inline FourierTable evdokimov_apply(const FourierTable& f, const HeckeParams& h, TermAudit* audit = nullptr) {
  require(h.mode == HeckeMode::tp_plus_tp2, ErrorKind::invalid_argument, "evdokimov_apply needs T(p) parameters");
  validate(h);
  require(f.level() == h.level && f.weight() == h.weight, ErrorKind::invalid_argument,
          "table level/weight do not match the operator");
  return detail::apply_relation(f, evdokimov_term_shapes(h.p, h.weight, resolved_reps(h)), h.p,
                                UpConditionSite::argument, audit);
}

namespace detail {

/// Representatives sharing (A, D, mu): they move indices identically and
/// differ only in the phase tr(T B D^-1).
struct SlashGroup {
  ParabolicParts parts;
  Rational disc_factor;  // disc(output) / disc(input) = (mu / det D)^2
  std::vector<PhaseForm> phases;
};

inline std::vector<SlashGroup> group_representatives(const std::vector<UpCoset>& reps) {
  std::vector<SlashGroup> groups;
  for (const auto& rep : reps) {
    ParabolicParts parts = block_parabolic_parts(rep.final_rep);
    PhaseForm form = phase_form(parts);
    bool placed = false;
    for (auto& g : groups)
      if (g.parts.a == parts.a && g.parts.d == parts.d && g.parts.multiplier == parts.multiplier) {
        g.phases.push_back(form);
        placed = true;
        break;
      }
    if (placed) continue;
    const Rational ratio = parts.multiplier / parts.d.determinant();
    groups.push_back({parts, Rational(ratio * ratio), {form}});
  }
  return groups;
}

/// Phase residue j with phase = j / p, or PhaseDenominator.
inline i64 phase_residue(const PhaseForm& form, const QuadIndex& t, i64 p) {
  const i64 num = form.numerator(t);
  const i64 g = std::gcd(num, form.den);
  const i64 den = form.den / g;
  require(p % den == 0, ErrorKind::phase_denominator,
          "phase denominator " + std::to_string(den) + " does not divide p at " + to_string(t));
  return num / g * (p / den);
}

inline bool output_in_range(const SlashGroup& g, const QuadIndex& t, i64 bound) {
  return Rational(g.disc_factor * t.abs_disc()) <= bound;
}

}  // namespace detail

/// U(p) via coset representatives: sum over final representatives of F |_k g,
/// computed termwise, with exponential sums evaluated exactly in Z[zeta_p].
inline FourierTable up_oracle(const FourierTable& f, const HeckeParams& h) {
  require(h.mode == HeckeMode::up, ErrorKind::invalid_argument, "up_oracle needs U(p) parameters");
  validate(h);
  require(f.level() == h.level && f.weight() == h.weight, ErrorKind::invalid_argument,
          "table level/weight do not match the operator");
  const i64 p = h.p, level = h.level;
  const i64 bound = detail::shrink_bound(f.certified_bound(), p);
  const auto groups = detail::group_representatives(build_up_cosets(p, level));

  // Output index -> coefficients of zeta_p^j, j = 0..p-1.
  std::map<QuadIndex, std::vector<Rational>, CanonicalLess> acc;
  std::vector<i64> histogram(static_cast<std::size_t>(p));
  for (const auto& g : groups) {
    for (const auto& [t, value] : f.entries()) {
      if (!detail::output_in_range(g, t, bound)) continue;
      const SlashTerm term = slash_term(g.parts, t.as_matrix(), h.weight);
      require(term.phase == g.phases.front().eval(t), ErrorKind::internal, "phase form disagrees with slash_term");
      std::fill(histogram.begin(), histogram.end(), 0);
      for (const auto& form : g.phases) ++histogram[static_cast<std::size_t>(detail::phase_residue(form, t, p))];

      const auto image = as_quad_index(term.index);
      if (!image || !is_valid_index(*image, level)) {
        // sum_j h_j zeta^j vanishes iff all h_j agree.
        for (i64 c : histogram)
          require(c == histogram.front(), ErrorKind::internal,
                  "nonzero contribution to a non-index from " + to_string(t));
        continue;
      }
      auto& slot = acc[*image];
      if (slot.empty()) slot.assign(static_cast<std::size_t>(p), Rational(0));
      const Rational weight = term.scale * value;
      for (std::size_t j = 0; j < histogram.size(); ++j)
        if (histogram[j]) slot[j] += weight * static_cast<long>(histogram[j]);
    }
  }

  FourierTable out(level, h.weight, bound, bound);
  for (const auto& [t, coeffs] : acc) {
    if (t.abs_disc() > bound) continue;
    for (std::size_t j = 2; j < coeffs.size(); ++j)
      require(coeffs[j] == coeffs[1], ErrorKind::internal, "irrational coefficient at " + to_string(t));
    const Rational value = coeffs[0] - coeffs[1];
    if (value != 0) out.set(t, value);
  }
  return out;
}

struct FloatCoefficient {
  std::complex<double> value;
  double magnitude = 0;  // sum of |contributions|, the scale for error bounds
};

/// Floating-point rendering of up_oracle: every representative contributes
/// scale * a(T) * exp(2 pi i phase) literally.
inline std::map<QuadIndex, FloatCoefficient, CanonicalLess> up_oracle_float(const FourierTable& f,
                                                                             const HeckeParams& h) {
  require(h.mode == HeckeMode::up, ErrorKind::invalid_argument, "up_oracle_float needs U(p) parameters");
  validate(h);
  const i64 p = h.p, level = h.level;
  const i64 bound = detail::shrink_bound(f.certified_bound(), p);
  const auto groups = detail::group_representatives(build_up_cosets(p, level));
  std::map<QuadIndex, FloatCoefficient, CanonicalLess> out;
  for (const auto& g : groups) {
    for (const auto& [t, value] : f.entries()) {
      if (!detail::output_in_range(g, t, bound)) continue;
      const SlashTerm term = slash_term(g.parts, t.as_matrix(), h.weight);
      const auto image = as_quad_index(term.index);
      if (!image || !is_valid_index(*image, level) || image->abs_disc() > bound) continue;
      const double weight = to_double(Rational(term.scale * value));
      auto& slot = out[*image];
      for (const auto& form : g.phases) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(form.numerator(t)) / static_cast<double>(form.den);
        slot.value += weight * std::polar(1.0, angle);
        slot.magnitude += std::abs(weight);
      }
    }
  }
  return out;
}

struct FloatComparison {
  double max_relative_error = 0;
  std::size_t compared = 0;
};

/// |float - exact| / max(|exact|, magnitude) over the union of supports.
inline FloatComparison compare_float(const FourierTable& exact,
                                     const std::map<QuadIndex, FloatCoefficient, CanonicalLess>& approx) {
  FloatComparison cmp;
  auto account = [&](const QuadIndex& t, const Rational& e, const FloatCoefficient* a) {
    const double ev = to_double(e);
    const std::complex<double> av = a ? a->value : 0.0;
    const double scale = std::max({std::abs(ev), a ? a->magnitude : 0.0, 1e-300});
    cmp.max_relative_error = std::max(cmp.max_relative_error, std::abs(av - ev) / scale);
    ++cmp.compared;
    (void)t;
  };
  for (const auto& [t, v] : exact.entries()) {
    auto it = approx.find(t);
    account(t, v, it == approx.end() ? nullptr : &it->second);
  }
  for (const auto& [t, a] : approx)
    if (!exact.contains(t)) account(t, 0, &a);
  return cmp;
}

struct EigenEstimate {
  bool consistent = false;
  Rational lambda;
  std::optional<QuadIndex> witness;  // first index violating G = lambda F
};

/// lambda with G = lambda F on the common certified range.
inline EigenEstimate eigenvalue_estimate(const FourierTable& f, const FourierTable& g) {
  require(f.level() == g.level() && f.weight() == g.weight(), ErrorKind::invalid_argument,
          "tables differ in level or weight");
  const i64 bound = std::min(f.certified_bound(), g.certified_bound());
  std::set<QuadIndex, CanonicalLess> keys;
  for (const auto& [t, v] : f.entries())
    if (t.abs_disc() <= bound) keys.insert(t);
  for (const auto& [t, v] : g.entries())
    if (t.abs_disc() <= bound) keys.insert(t);

  std::optional<Rational> lambda;
  for (const auto& t : keys)
    if (f.at(t) != 0) {
      lambda = g.at(t) / f.at(t);
      break;
    }
  require(lambda.has_value(), ErrorKind::zero_form, "F vanishes on the common certified range");
  EigenEstimate est{true, *lambda, std::nullopt};
  for (const auto& t : keys)
    if (g.at(t) != *lambda * f.at(t)) {
      est.consistent = false;
      est.witness = t;
      break;
    }
  return est;
}

/// One summand of a relation evaluated at S/p, for the descent diagnostic.
struct DescentTerm {
  i64 prime;
  TermKind kind;
  QuadIndex argument;
  Rational value;
  bool smaller_disc;
};

struct PrimitiveSearch {
  QuadIndex index;
  bool primitive = false;
  std::vector<DescentTerm> descent;
  std::vector<std::string> notes;
};

/// The nonzero certified coefficient of least |disc| (ties by (n, r)) and the
/// relation terms at S/p for each p dividing its content.
inline PrimitiveSearch find_primitive(const FourierTable& f) {
  std::optional<QuadIndex> best;
  for (const auto& [t, v] : f.entries())
    if (f.certified(t)) {
      best = t;
      break;
    }
  require(best.has_value(), ErrorKind::zero_form, "no nonzero certified coefficient");
  PrimitiveSearch out;
  out.index = *best;
  const i64 c = content(*best);
  out.primitive = c == 1;
  const i64 level = f.level();
  for (i64 p : prime_divisors(c)) {
    const QuadIndex t{best->n / p, best->r / p, best->mn / p};
    if (!is_valid_index(t, level)) {
      out.notes.push_back("p=" + std::to_string(p) + ": S/p is not an index of level " + std::to_string(level));
      continue;
    }
    std::vector<TermShape> shapes;
    if (level % p == 0) {
      if (level % (p * p) == 0 || p == 2) {
        out.notes.push_back("p=" + std::to_string(p) + ": no U(p) relation (p^2 | N or p = 2)");
        continue;
      }
      shapes = up_term_shapes(HeckeParams::up(p, level, f.weight()));
    } else {
      shapes = evdokimov_term_shapes(p, f.weight(), default_evdokimov_reps(p, level));
    }
    for (const auto& s : shapes) {
      const auto x = term_argument(s, t, p).resolve(level);
      if (!x) continue;
      const Rational& v = f.at(*x);
      if (v == 0) continue;
      out.descent.push_back({p, s.kind, *x, v, x->abs_disc() < best->abs_disc()});
    }
  }
  return out;
}

}  // namespace pfes
