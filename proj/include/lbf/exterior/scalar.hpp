#pragma once

// Scalar coefficients for the exterior engine: Laurent polynomials with exact
// rational coefficients over a fixed atom set. Function atoms (f, u', mu, ...)
// are opaque; they only carry partial-derivative rules.

#include "lbf/core.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lbf::exterior {

enum class Atom : std::uint8_t {
  // coordinates
  r1, r2, theta1, theta2, r, theta, phi, t, s, z1, z2,
  // function atoms
  f,       // u(r1^2 + r2^2)
  du,      // u'(r1^2 + r2^2)
  ddu,     // u''(r1^2 + r2^2)
  mu,      // mu(r1)
  dmu,     // mu'(r1)
  ddmu,    // mu''(r1)
  sigma,   // sigma(t)
  dsigma,  // sigma'(t)
  exp_t,   // e^t
  fc,      // contact profile f(r)
  gc,      // contact profile g(r)
  dfc,
  dgc,
  ddfc,
  ddgc,
  count_
};

inline constexpr std::size_t kAtomCount = static_cast<std::size_t>(Atom::count_);

inline constexpr bool is_variable(Atom a) { return a <= Atom::z2; }

inline std::string_view atom_name(Atom a) {
  static constexpr std::array<std::string_view, kAtomCount> names = {
      "r1",  "r2",  "th1",   "th2",    "r",   "th",  "phi", "t",   "s",
      "z1",  "z2",  "f",     "u'",     "u''", "mu",  "mu'", "mu''", "sigma",
      "sigma'", "e^t", "fc", "gc", "fc'", "gc'", "fc''", "gc''"};
  return names[static_cast<std::size_t>(a)];
}

inline std::optional<Atom> atom_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kAtomCount; ++i) {
    if (atom_name(static_cast<Atom>(i)) == name) return static_cast<Atom>(i);
  }
  return std::nullopt;
}

/// Exponent vector over all atoms; negative entries allowed (1/r).
using Exponents = std::array<std::int16_t, kAtomCount>;

class DerivativeRules;

class Scalar {
 public:
  Scalar() = default;
  Scalar(int c) : Scalar(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  Scalar(const Rational& c) {             // NOLINT(google-explicit-constructor)
    if (c != 0) terms_.emplace(Exponents{}, c);
  }

  static Scalar atom(Atom a, int power = 1) {
    Scalar out;
    if (power == 0) return Scalar(1);
    Exponents e{};
    e[static_cast<std::size_t>(a)] = static_cast<std::int16_t>(power);
    out.terms_.emplace(e, Rational(1));
    return out;
  }

  static Scalar frac(long num, long den) { return Scalar(Rational(num) / Rational(den)); }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<Exponents, Rational>& terms() const { return terms_; }

  /// Constant term if this scalar is a constant; nullopt otherwise.
  std::optional<Rational> as_constant() const {
    if (terms_.empty()) return Rational(0);
    if (terms_.size() == 1 && terms_.begin()->first == Exponents{}) return terms_.begin()->second;
    return std::nullopt;
  }

  bool depends_on(Atom a) const {
    for (const auto& [e, c] : terms_) {
      if (e[static_cast<std::size_t>(a)] != 0) return true;
    }
    return false;
  }

  Scalar& operator+=(const Scalar& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Scalar operator-() const {
    Scalar out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
  }
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    Scalar out;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e;
        for (std::size_t i = 0; i < kAtomCount; ++i) e[i] = static_cast<std::int16_t>(ea[i] + eb[i]);
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.terms_ == b.terms_; }

  Scalar pow(unsigned e) const {
    Scalar out(1);
    Scalar b = *this;
    for (; e != 0; e >>= 1) {
      if (e & 1u) out *= b;
      if (e > 1) b *= b;
    }
    return out;
  }

  /// Exact division by a single monomial term (Laurent).
  Scalar divide_by_monomial(const Scalar& m) const {
    if (m.terms_.size() != 1) throw DomainError("divide_by_monomial: divisor is not a monomial");
    const auto& [em, cm] = *m.terms_.begin();
    Scalar out;
    for (const auto& [e, c] : terms_) {
      Exponents q;
      for (std::size_t i = 0; i < kAtomCount; ++i) q[i] = static_cast<std::int16_t>(e[i] - em[i]);
      out.add_term(q, c / cm);
    }
    return out;
  }

  /// Replace every occurrence of atom `a` by `value`.
  Scalar substitute(Atom a, const Scalar& value) const {
    const auto idx = static_cast<std::size_t>(a);
    Scalar out;
    for (const auto& [e, c] : terms_) {
      const int power = e[idx];
      if (power == 0) {
        out.add_term(e, c);
        continue;
      }
      Exponents rest = e;
      rest[idx] = 0;
      Scalar term;
      term.terms_.emplace(rest, c);
      if (power > 0) {
        term *= value.pow(static_cast<unsigned>(power));
      } else {
        auto k = value.as_constant();
        if (!k || *k == 0) throw DomainError("substitute: negative power of a non-constant value");
        term *= Scalar(lbf::pow(*k, power));
      }
      out += term;
    }
    return out;
  }

  /// Partial derivative with respect to a coordinate atom.
  Scalar diff(Atom var, const DerivativeRules& rules) const;

  /// Canonical text, e.g. "2*r1^2*f - 1/3*mu'".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      Rational mag = c < 0 ? Rational(-c) : c;
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      bool wrote = false;
      if (mag != 1 || e == Exponents{}) {
        os << mag.str();
        wrote = true;
      }
      for (std::size_t i = 0; i < kAtomCount; ++i) {
        if (e[i] == 0) continue;
        if (wrote) os << "*";
        os << atom_name(static_cast<Atom>(i));
        if (e[i] != 1) os << "^" << e[i];
        wrote = true;
      }
    }
    return os.str();
  }

 private:
  void add_term(const Exponents& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::map<Exponents, Rational> terms_;
};

inline Scalar var(Atom a, int power = 1) { return Scalar::atom(a, power); }

/// Partial-derivative rules for function atoms. A function atom with no entry
/// is "unregistered": differentiating it raises MissingRuleError. A registered
/// atom has zero partials with respect to variables it does not list.
class DerivativeRules {
 public:
  DerivativeRules& set(Atom fn, Atom variable, Scalar partial) {
    rules_[fn][variable] = std::move(partial);
    return *this;
  }
  bool registered(Atom fn) const { return rules_.count(fn) != 0; }

  Scalar partial(Atom fn, Atom variable) const {
    auto it = rules_.find(fn);
    if (it == rules_.end()) {
      throw MissingRuleError("missing rule: no derivative registered for atom '" +
                             std::string(atom_name(fn)) + "'");
    }
    auto jt = it->second.find(variable);
    return jt == it->second.end() ? Scalar() : jt->second;
  }

  /// The chain rules used by every model in the toolkit:
  /// f = u(r1^2 + r2^2), mu = mu(r1), sigma = sigma(t), e^t, and the contact
  /// profile f_c(r), g_c(r). Second derivatives u'', mu'', fc'', gc'' and
  /// sigma' are terminal (unregistered).
  static const DerivativeRules& standard() {
    static const DerivativeRules rules = [] {
      DerivativeRules r;
      r.set(Atom::f, Atom::r1, 2 * var(Atom::r1) * var(Atom::du))
          .set(Atom::f, Atom::r2, 2 * var(Atom::r2) * var(Atom::du))
          .set(Atom::du, Atom::r1, 2 * var(Atom::r1) * var(Atom::ddu))
          .set(Atom::du, Atom::r2, 2 * var(Atom::r2) * var(Atom::ddu))
          .set(Atom::mu, Atom::r1, var(Atom::dmu))
          .set(Atom::dmu, Atom::r1, var(Atom::ddmu))
          .set(Atom::sigma, Atom::t, var(Atom::dsigma))
          .set(Atom::exp_t, Atom::t, var(Atom::exp_t))
          .set(Atom::fc, Atom::r, var(Atom::dfc))
          .set(Atom::gc, Atom::r, var(Atom::dgc))
          .set(Atom::dfc, Atom::r, var(Atom::ddfc))
          .set(Atom::dgc, Atom::r, var(Atom::ddgc));
      return r;
    }();
    return rules;
  }

 private:
  std::map<Atom, std::map<Atom, Scalar>> rules_;
};

inline Scalar Scalar::diff(Atom v, const DerivativeRules& rules) const {
  if (!is_variable(v)) throw ConfigError("diff: '" + std::string(atom_name(v)) + "' is not a coordinate");
  Scalar out;
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < kAtomCount; ++i) {
      if (e[i] == 0) continue;
      const auto a = static_cast<Atom>(i);
      Scalar inner;
      if (a == v) {
        inner = Scalar(1);
      } else if (is_variable(a)) {
        continue;
      } else {
        inner = rules.partial(a, v);
        if (inner.is_zero()) continue;
      }
      Exponents reduced = e;
      reduced[i] = static_cast<std::int16_t>(e[i] - 1);
      Scalar term;
      term.terms_.emplace(reduced, c * e[i]);
      out += term * inner;
    }
  }
  return out;
}

/// Numeric values for coordinates and evaluators for function atoms.
/// Function evaluators receive the coordinate bindings.
struct Bindings {
  std::map<Atom, double> values;
  std::map<Atom, std::function<double(const std::map<Atom, double>&)>> functions;

  Bindings& bind(Atom a, double x) {
    values[a] = x;
    return *this;
  }
};

inline double eval_numeric(const Scalar& e, const Bindings& b) {
  std::array<std::optional<double>, kAtomCount> cache{};
  auto lookup = [&](std::size_t i) -> double {
    if (cache[i]) return *cache[i];
    const auto a = static_cast<Atom>(i);
    double v = 0;
    if (auto it = b.values.find(a); it != b.values.end()) {
      v = it->second;
    } else if (auto jt = b.functions.find(a); jt != b.functions.end()) {
      v = jt->second(b.values);
    } else {
      throw UnboundAtomError("unbound atom '" + std::string(atom_name(a)) + "'");
    }
    cache[i] = v;
    return v;
  };
  double sum = 0;
  for (const auto& [ex, c] : e.terms()) {
    double term = to_double(c);
    for (std::size_t i = 0; i < kAtomCount; ++i) {
      if (ex[i] != 0) term *= std::pow(lookup(i), ex[i]);
    }
    sum += term;
  }
  return sum;
}

}  // namespace lbf::exterior
