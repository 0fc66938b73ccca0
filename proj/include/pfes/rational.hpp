#pragma once

#include <gmpxx.h>

#include <climits>
#include <string>

#include "pfes/arith.hpp"
#include "pfes/error.hpp"

namespace pfes {

using Integer = mpz_class;

/// GMP rationals are canonical after every arithmetic operation; the only way
/// to hold a non-reduced value is direct (num, den) construction, which goes
/// through make_rational below.
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den = 1) {
  require(den != 0, ErrorKind::invalid_argument, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_rational(i64 num, i64 den = 1) {
  return make_rational(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline bool fits_i64(const Integer& z) { return z.fits_slong_p(); }

inline i64 to_i64(const Integer& z) {
  require(fits_i64(z), ErrorKind::overflow, "integer does not fit in 64 bits");
  return static_cast<i64>(z.get_si());
}

inline i64 to_i64(const Rational& q) {
  require(is_integer(q), ErrorKind::invalid_argument, "rational is not an integer");
  return to_i64(q.get_num());
}

/// Always "num/den", including den == 1.
inline std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Representative of q mod 1 in [0, 1).
inline Rational frac_part(const Rational& q) {
  Integer floor_q;
  mpz_fdiv_q(floor_q.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(q - floor_q);
}

/// p-adic valuation; INT_MAX for zero.
inline int valuation(const Rational& q, i64 p) {
  if (q == 0) return INT_MAX;
  const Integer prime(static_cast<long>(p));
  auto count = [&](Integer z) {
    int v = 0;
    while (mpz_divisible_p(z.get_mpz_t(), prime.get_mpz_t())) {
      z /= prime;
      ++v;
    }
    return v;
  };
  return count(q.get_num()) - count(q.get_den());
}

inline Rational pow(const Rational& base, int exp) {
  require(base != 0 || exp >= 0, ErrorKind::invalid_argument, "zero to a negative power");
  Rational out = 1;
  Rational b = exp >= 0 ? base : Rational(1 / base);
  for (int i = 0, n = exp >= 0 ? exp : -exp; i < n; ++i) out *= b;
  return out;
}

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace pfes
