#pragma once

#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pfes/arith.hpp"
#include "pfes/rational.hpp"

namespace pfes {

/// A Dirichlet character modulo F, stored prime power by prime power.
///
/// Each component modulo q = p^e keeps a discrete-log table on the units of
/// Z/qZ: chi_p(x) = e(table[x] / exponent), where exponent is the exponent of
/// the unit group. Odd p uses one generator (a primitive root); 2^e uses -1
/// and 5. A component is fixed by one exponent j_i per generator:
/// chi(g_i) = e(j_i / ord(g_i)).
class DirichletCharacter {
 public:
  struct Component {
    i64 prime = 2;
    int exponent = 1;
    i64 modulus = 2;
    std::vector<i64> generators;
    std::vector<i64> orders;
    std::vector<i64> j;           // chi(g_i) = e(j_i / orders_i)
    i64 group_exponent = 1;       // lcm of the orders
    std::vector<i64> angle;       // angle numerator over group_exponent, -1 off units
  };

  /// Trivial character modulo `modulus`.
  static DirichletCharacter trivial(i64 modulus) {
    require(modulus >= 1, ErrorKind::invalid_argument, "character modulus must be positive");
    DirichletCharacter chi;
    chi.modulus_ = modulus;
    for (const auto& pp : factorize(modulus)) chi.components_.push_back(make_component(pp.prime, pp.exponent, {}));
    chi.finish();
    return chi;
  }

  /// Character of prime-power modulus q with generator exponents j.
  static DirichletCharacter prime_power(i64 q, std::vector<i64> j) {
    const auto f = factorize(q);
    require(f.size() == 1, ErrorKind::invalid_argument, std::to_string(q) + " is not a prime power");
    DirichletCharacter chi;
    chi.modulus_ = q;
    chi.components_.push_back(make_component(f[0].prime, f[0].exponent, std::move(j)));
    chi.finish();
    return chi;
  }

  /// The Legendre symbol (./q) for an odd prime q.
  static DirichletCharacter legendre(i64 q) {
    require(q > 2 && is_prime(q), ErrorKind::invalid_argument, "Legendre character needs an odd prime");
    return prime_power(q, {(q - 1) / 2});
  }

  /// The character agreeing with fn on units modulo `modulus`; fn must be a
  /// character (checked on every unit).
  static DirichletCharacter from_values(i64 modulus, const std::function<int(i64)>& fn) {
    DirichletCharacter chi = trivial(modulus);
    for (auto& c : chi.components_) {
      for (std::size_t i = 0; i < c.generators.size(); ++i) {
        const i64 lift = lift_to_modulus(c, c.generators[i], modulus);
        const int v = fn(lift);
        require(v == 1 || v == -1, ErrorKind::unsupported_character, "value table is not real on units");
        c.j[i] = v == 1 ? 0 : c.orders[i] / 2;
        require(v == 1 || c.orders[i] % 2 == 0, ErrorKind::invalid_argument, "value -1 on an odd-order generator");
      }
      fill_angles(c);
    }
    chi.finish();
    for (i64 x = 1; x < std::max<i64>(modulus, 2); ++x) {
      if (std::gcd(x, modulus) != 1) continue;
      require(chi.real_value(x) == fn(x), ErrorKind::invalid_argument, "function is not multiplicative on units");
    }
    return chi;
  }

  /// Parses "q[:j][,q[:j]...]" where q is a prime power and j the generator
  /// exponent (for 2^e with e >= 3, "j1.j2"). A missing j selects the
  /// quadratic character of the component. "1" is the trivial character.
  static DirichletCharacter parse(const std::string& text) {
    if (text.empty() || text == "1") return trivial(1);
    DirichletCharacter out = trivial(1);
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto colon = item.find(':');
      const i64 q = parse_int(item.substr(0, colon));
      const auto f = factorize(q);
      require(q > 1 && f.size() == 1, ErrorKind::invalid_argument, "character component '" + item + "' is not a prime power");
      std::vector<i64> j;
      if (colon != std::string::npos) {
        std::stringstream js(item.substr(colon + 1));
        std::string part;
        while (std::getline(js, part, '.')) j.push_back(parse_int(part));
      } else {
        const Component c = make_component(f[0].prime, f[0].exponent, {});
        for (i64 ord : c.orders) j.push_back(ord % 2 == 0 ? ord / 2 : 0);
      }
      out = out * prime_power(q, j);
    }
    return out;
  }

  i64 modulus() const { return modulus_; }
  const std::vector<Component>& components() const { return components_; }

  /// chi(x) = e(angle), or nullopt when gcd(x, F) > 1.
  std::optional<Rational> angle(i64 x) const {
    if (std::gcd(mod(x, modulus_), modulus_) != 1 && modulus_ > 1) return std::nullopt;
    Rational total = 0;
    for (const auto& c : components_) total += make_rational(c.angle[static_cast<std::size_t>(mod(x, c.modulus))], c.group_exponent);
    return frac_part(total);
  }

  bool is_real() const { return real_; }

  /// chi(x) in {-1, 0, 1}; UnsupportedCharacter for non-real characters.
  int real_value(i64 x) const {
    require(real_, ErrorKind::unsupported_character, "character is not real-valued");
    const auto a = angle(x);
    if (!a) return 0;
    return *a == 0 ? 1 : -1;
  }

  std::complex<double> value(i64 x) const {
    const auto a = angle(x);
    if (!a) return 0.0;
    return std::polar(1.0, 2 * std::numbers::pi * to_double(*a));
  }

  /// chi(-1) = +1 or -1.
  int parity() const { return parity_; }
  bool is_trivial() const {
    for (const auto& c : components_)
      for (i64 v : c.j)
        if (v) return false;
    return true;
  }

  /// The component at prime p (trivial when p does not divide F).
  DirichletCharacter component(i64 p) const {
    for (const auto& c : components_)
      if (c.prime == p) return prime_power(c.modulus, c.j);
    return trivial(1);
  }

  i64 conductor() const {
    i64 f = 1;
    for (const auto& c : components_) f *= component_conductor(c);
    return f;
  }
  bool is_primitive() const { return conductor() == modulus_; }

  /// The product of the primes whose component is odd.
  i64 odd_component_product() const {
    i64 f = 1;
    for (const auto& c : components_)
      if (prime_power(c.modulus, c.j).parity() == -1) f *= c.prime;
    return f;
  }

  /// The same character viewed modulo a multiple of F.
  DirichletCharacter lift(i64 new_modulus) const {
    require(new_modulus % modulus_ == 0, ErrorKind::invalid_argument, "lift needs a multiple of the modulus");
    DirichletCharacter out = trivial(new_modulus);
    return out * *this;
  }

  friend DirichletCharacter operator*(const DirichletCharacter& x, const DirichletCharacter& y) {
    DirichletCharacter out;
    out.modulus_ = lcm64(x.modulus_, y.modulus_);
    for (const auto& pp : factorize(out.modulus_)) {
      Component c = make_component(pp.prime, pp.exponent, {});
      for (const DirichletCharacter* src : {&x, &y})
        for (const auto& sc : src->components_)
          if (sc.prime == pp.prime) absorb(c, sc);
      fill_angles(c);
      out.components_.push_back(std::move(c));
    }
    out.finish();
    return out;
  }

  /// Canonical text form, parseable by parse().
  std::string to_string() const {
    if (components_.empty()) return "1";
    std::string s;
    for (const auto& c : components_) {
      if (!s.empty()) s += ',';
      s += std::to_string(c.modulus);
      if (!c.j.empty()) {
        s += ':';
        for (std::size_t i = 0; i < c.j.size(); ++i) s += (i ? "." : "") + std::to_string(c.j[i]);
      }
    }
    return s;
  }

  friend bool operator==(const DirichletCharacter& x, const DirichletCharacter& y) {
    return x.to_string() == y.to_string();
  }

 private:
  static i64 parse_int(const std::string& s) {
    std::size_t pos = 0;
    i64 v = 0;
    try {
      v = std::stoll(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    require(pos == s.size() && !s.empty(), ErrorKind::invalid_argument, "bad integer '" + s + "' in character spec");
    return v;
  }

  static Component make_component(i64 p, int e, std::vector<i64> j) {
    Component c;
    c.prime = p;
    c.exponent = e;
    c.modulus = checked_pow(p, static_cast<unsigned>(e));
    if (p != 2) {
      c.generators = {primitive_root_prime_power(p, e)};
      c.orders = {euler_phi(c.modulus)};
    } else if (e == 1) {
      // (Z/2Z)^x is trivial.
    } else if (e == 2) {
      c.generators = {3};
      c.orders = {2};
    } else {
      c.generators = {c.modulus - 1, 5};
      c.orders = {2, c.modulus / 4};
    }
    if (j.empty()) j.assign(c.generators.size(), 0);
    require(j.size() == c.generators.size(), ErrorKind::invalid_argument,
            "component mod " + std::to_string(c.modulus) + " needs " + std::to_string(c.generators.size()) +
                " generator exponent(s)");
    for (std::size_t i = 0; i < j.size(); ++i) j[i] = mod(j[i], c.orders[i]);
    c.j = std::move(j);
    fill_angles(c);
    return c;
  }

  static void fill_angles(Component& c) {
    c.group_exponent = 1;
    for (i64 o : c.orders) c.group_exponent = lcm64(c.group_exponent, o);
    c.angle.assign(static_cast<std::size_t>(c.modulus), -1);
    if (c.generators.empty()) {
      if (c.modulus == 2) c.angle[1] = 0;
      else c.angle[0] = 0;  // modulus 1
      return;
    }
    if (c.generators.size() == 1) {
      i64 x = 1;
      for (i64 i = 0; i < c.orders[0]; ++i) {
        c.angle[static_cast<std::size_t>(x)] = mod(c.j[0] * i * (c.group_exponent / c.orders[0]), c.group_exponent);
        x = mulmod(x, c.generators[0], c.modulus);
      }
      return;
    }
    i64 x0 = 1;
    for (i64 a = 0; a < c.orders[0]; ++a) {
      i64 x = x0;
      for (i64 b = 0; b < c.orders[1]; ++b) {
        const i64 num = c.j[0] * a * (c.group_exponent / c.orders[0]) + c.j[1] * b * (c.group_exponent / c.orders[1]);
        c.angle[static_cast<std::size_t>(x)] = mod(num, c.group_exponent);
        x = mulmod(x, c.generators[1], c.modulus);
      }
      x0 = mulmod(x0, c.generators[0], c.modulus);
    }
  }

  /// Multiplies c by the character sc of the same prime (sc's modulus divides c's).
  static void absorb(Component& c, const Component& sc) {
    for (std::size_t i = 0; i < c.generators.size(); ++i) {
      // chi_sc(g_i) = e(angle / group_exponent); convert to a multiple of 1/orders_i.
      const i64 a = sc.angle[static_cast<std::size_t>(mod(c.generators[i], sc.modulus))];
      const Rational turn = make_rational(a, sc.group_exponent);
      const Rational steps = turn * static_cast<long>(c.orders[i]);
      require(is_integer(steps), ErrorKind::internal, "character product: incompatible generator orders");
      c.j[i] = mod(c.j[i] + to_i64(steps), c.orders[i]);
    }
  }

  static i64 lift_to_modulus(const Component& c, i64 g, i64 modulus) {
    const i64 rest = modulus / c.modulus;
    return rest == 1 ? g : crt(g, c.modulus, 1, rest);
  }

  /// Least f = p^e' such that the component is trivial on units x = 1 (mod f).
  static i64 component_conductor(const Component& c) {
    for (int e = 0; e < c.exponent; ++e) {
      const i64 f = checked_pow(c.prime, static_cast<unsigned>(e));
      bool trivial_on_kernel = true;
      for (i64 x = 1; x < c.modulus && trivial_on_kernel; x += f)
        if (c.angle[static_cast<std::size_t>(x)] > 0) trivial_on_kernel = false;
      if (trivial_on_kernel) return f;
    }
    return c.modulus;
  }

  void finish() {
    real_ = true;
    for (const auto& c : components_)
      for (std::size_t i = 0; i < c.j.size(); ++i)
        if ((2 * c.j[i]) % c.orders[i] != 0) real_ = false;
    const auto a = angle(-1);
    parity_ = (!a || *a == 0) ? 1 : -1;
  }

  i64 modulus_ = 1;
  std::vector<Component> components_;
  bool real_ = true;
  int parity_ = 1;
};

/// psi_t(d) = psi(d) (t/d) (-1/d) on odd d, modulo lcm(r, 4t).
inline DirichletCharacter theta_twist(const DirichletCharacter& psi, i64 t) {
  require(t >= 1, ErrorKind::invalid_argument, "twist parameter must be positive");
  const i64 modulus = lcm64(psi.modulus(), 4 * t);
  return DirichletCharacter::from_values(modulus, [&](i64 d) {
    // d is a positive odd unit here.
    return psi.real_value(d) * jacobi(t, d) * jacobi(-1, d);
  });
}

/// All real characters modulo r with the given parity, in canonical order:
/// components in increasing prime order, each running trivial before quadratic.
inline std::vector<DirichletCharacter> real_characters(i64 r, int parity) {
  std::vector<std::vector<std::vector<i64>>> choices;
  std::vector<i64> moduli;
  for (const auto& pp : factorize(r)) {
    const i64 q = checked_pow(pp.prime, static_cast<unsigned>(pp.exponent));
    moduli.push_back(q);
    std::vector<std::vector<i64>> opts;
    if (pp.prime != 2) {
      opts = {{0}, {euler_phi(q) / 2}};
    } else if (pp.exponent == 1) {
      opts = {{}};
    } else if (pp.exponent == 2) {
      opts = {{0}, {1}};
    } else {
      opts = {{0, 0}, {1, 0}, {0, q / 8}, {1, q / 8}};
    }
    choices.push_back(std::move(opts));
  }
  std::vector<DirichletCharacter> out;
  std::vector<std::size_t> pick(choices.size(), 0);
  while (true) {
    DirichletCharacter chi = DirichletCharacter::trivial(r);
    for (std::size_t i = 0; i < choices.size(); ++i)
      chi = chi * DirichletCharacter::prime_power(moduli[i], choices[i][pick[i]]);
    if (chi.parity() == parity) out.push_back(chi);
    std::size_t i = choices.size();
    while (i > 0) {
      --i;
      if (++pick[i] < choices[i].size()) break;
      pick[i] = 0;
      if (i == 0) return out;
    }
    if (choices.empty()) return out;
  }
}

}  // namespace pfes
