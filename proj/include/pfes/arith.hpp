#pragma once

// Machine-integer number theory used throughout: checked arithmetic, gcd
// machinery, primality, factorization and quadratic symbols.

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfes/error.hpp"

namespace pfes {

using i64 = std::int64_t;
using i128 = __int128;

inline i64 narrow(i128 v) {
  if (v > static_cast<i128>(INT64_MAX) || v < static_cast<i128>(INT64_MIN))
    fail(ErrorKind::overflow, "integer result exceeds 64 bits");
  return static_cast<i64>(v);
}

inline i64 checked_mul(i64 a, i64 b) {
  i64 out;
  if (__builtin_mul_overflow(a, b, &out)) fail(ErrorKind::overflow, "multiplication overflow");
  return out;
}

inline i64 checked_add(i64 a, i64 b) {
  i64 out;
  if (__builtin_add_overflow(a, b, &out)) fail(ErrorKind::overflow, "addition overflow");
  return out;
}

inline i64 checked_pow(i64 base, unsigned exp) {
  i64 out = 1;
  for (unsigned i = 0; i < exp; ++i) out = checked_mul(out, base);
  return out;
}

/// Least nonnegative residue.
inline i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

inline i64 abs64(i64 a) { return a < 0 ? -a : a; }

inline i64 gcd3(i64 a, i64 b, i64 c) { return std::gcd(std::gcd(a, b), c); }

struct ExtGcd {
  i64 g;
  i64 x;
  i64 y;
};

/// g = gcd(a, b) >= 0 with a*x + b*y = g.
inline ExtGcd ext_gcd(i64 a, i64 b) {
  i64 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    i64 q = old_r / r;
    i64 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

inline std::optional<i64> inverse_mod(i64 a, i64 m) {
  auto [g, x, y] = ext_gcd(mod(a, m), m);
  (void)y;
  if (g != 1) return std::nullopt;
  return mod(x, m);
}

/// x with x = r1 (mod m1), x = r2 (mod m2), 0 <= x < m1*m2; moduli coprime.
inline i64 crt(i64 r1, i64 m1, i64 r2, i64 m2) {
  auto inv = inverse_mod(m1, m2);
  require(inv.has_value(), ErrorKind::invalid_argument, "crt: moduli not coprime");
  i64 m = checked_mul(m1, m2);
  i128 t = static_cast<i128>(mod(r2 - r1, m2)) * *inv % m2;
  return mod(narrow(r1 + t * m1), m);
}

inline i64 mulmod(i64 a, i64 b, i64 m) { return static_cast<i64>(static_cast<i128>(a) * b % m); }

inline i64 powmod(i64 base, i64 exp, i64 m) {
  i64 result = 1 % m;
  base = mod(base, m);
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// Deterministic Miller-Rabin for the full signed 64-bit range.
inline bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  i64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (i64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    i64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

struct PrimePower {
  i64 prime;
  int exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Trial-division factorization of |n|; empty for |n| <= 1.
inline std::vector<PrimePower> factorize(i64 n) {
  std::vector<PrimePower> out;
  n = abs64(n);
  for (i64 p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

inline std::vector<i64> prime_divisors(i64 n) {
  std::vector<i64> out;
  for (const auto& pp : factorize(n)) out.push_back(pp.prime);
  return out;
}

/// 0 is not square-free; +-1 are.
inline bool is_squarefree(i64 n) {
  if (n == 0) return false;
  for (const auto& pp : factorize(n))
    if (pp.exponent > 1) return false;
  return true;
}

/// p-adic valuation of a nonzero integer.
inline int valuation(i64 n, i64 p) {
  require(n != 0, ErrorKind::invalid_argument, "valuation of zero");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline std::vector<i64> divisors(i64 n) {
  std::vector<i64> small, large;
  n = abs64(n);
  for (i64 d = 1; d <= n / d; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

inline i64 euler_phi(i64 n) {
  i64 out = n;
  for (const auto& pp : factorize(n)) out = out / pp.prime * (pp.prime - 1);
  return out;
}

inline i64 lcm64(i64 a, i64 b) { return checked_mul(a / std::gcd(a, b), b); }

/// Jacobi symbol (a/n) for odd n > 0.
inline int jacobi(i64 a, i64 n) {
  require(n > 0 && (n & 1), ErrorKind::invalid_argument, "jacobi symbol needs odd positive modulus");
  a = mod(a, n);
  int result = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      i64 r = n & 7;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

/// Smallest positive generator of (Z/p^e)^x for an odd prime p.
inline i64 primitive_root_prime_power(i64 p, int e) {
  require(p > 2 && is_prime(p), ErrorKind::invalid_argument, "primitive root needs an odd prime");
  const i64 phi_p = p - 1;
  const auto factors = prime_divisors(phi_p);
  for (i64 g = 2; g < p; ++g) {
    bool generator = true;
    for (i64 q : factors)
      if (powmod(g, phi_p / q, p) == 1) {
        generator = false;
        break;
      }
    if (!generator) continue;
    // A root mod p lifts to every p^e unless g^(p-1) = 1 mod p^2.
    if (e >= 2 && powmod(g, phi_p, p * p) == 1) return g + p;
    return g;
  }
  fail(ErrorKind::internal, "no primitive root found");
}

}  // namespace pfes
