#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfes/quad_index.hpp"
#include "pfes/rational.hpp"

namespace pfes {

/// Finitely supported truncation of a paramodular Fourier expansion.
///
/// Keys satisfy the index rules at the table's level and |disc| <= disc_bound.
/// For |disc| <= certified_bound an absent key means the coefficient is 0;
/// beyond it the coefficient is unknown. Zero values are never stored.
class FourierTable {
 public:
  using Map = std::map<QuadIndex, Rational, CanonicalLess>;

  FourierTable(i64 level, int weight, i64 disc_bound, i64 certified_bound)
      : level_(level), weight_(weight), disc_bound_(disc_bound), certified_bound_(certified_bound) {
    require(level >= 1, ErrorKind::invariant_error, "level must be positive");
    require(disc_bound >= 1, ErrorKind::invariant_error, "disc bound must be positive");
    require(certified_bound >= 1 && certified_bound <= disc_bound, ErrorKind::invariant_error,
            "certified bound must lie in [1, disc bound]");
  }

  i64 level() const { return level_; }
  int weight() const { return weight_; }
  i64 disc_bound() const { return disc_bound_; }
  i64 certified_bound() const { return certified_bound_; }

  bool certified(const QuadIndex& t) const { return t.abs_disc() <= certified_bound_; }

  const Rational& at(const QuadIndex& t) const {
    static const Rational zero = 0;
    auto it = coeffs_.find(t);
    return it == coeffs_.end() ? zero : it->second;
  }

  bool contains(const QuadIndex& t) const { return coeffs_.count(t) != 0; }

  /// Inserts or overwrites; a zero value erases the key.
  void set(const QuadIndex& t, const Rational& value) {
    const std::string why = index_violation(t, level_);
    require(why.empty(), ErrorKind::invariant_error, "index " + to_string(t) + ": " + why);
    require(t.abs_disc() <= disc_bound_, ErrorKind::invariant_error,
            "index " + to_string(t) + ": |disc| exceeds the table bound");
    if (value == 0)
      coeffs_.erase(t);
    else
      coeffs_[t] = value;
  }

  void add(const QuadIndex& t, const Rational& value) { set(t, at(t) + value); }

  const Map& entries() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }
  bool empty() const { return coeffs_.empty(); }

  /// True iff every stored coefficient with |disc| <= certified bound is zero.
  bool vanishes_on_certified_range() const {
    for (const auto& [t, v] : coeffs_)
      if (certified(t)) return false;
    return true;
  }

  // Optional eigen metadata carried by the file format.
  std::optional<int> fricke_sign;
  std::vector<std::pair<i64, Rational>> eigenvalues;  // (p, lambda_p)
  std::vector<std::string> provenance;

 private:
  i64 level_;
  int weight_;
  i64 disc_bound_;
  i64 certified_bound_;
  Map coeffs_;
};

/// Equality of coefficient maps restricted to |disc| <= bound (absent = 0).
inline bool equal_up_to(const FourierTable& x, const FourierTable& y, i64 bound) {
  auto restricted = [bound](const FourierTable& t) {
    std::vector<std::pair<QuadIndex, Rational>> out;
    for (const auto& [k, v] : t.entries())
      if (k.abs_disc() <= bound) out.emplace_back(k, v);
    return out;
  };
  return restricted(x) == restricted(y);
}

}  // namespace pfes
