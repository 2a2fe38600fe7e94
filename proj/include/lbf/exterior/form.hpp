#pragma once

// Graded-commutative forms over a fixed generator algebra.
//
// A monomial is stored as a bit mask of odd generators (in algebra order) plus
// exponents of the even generators, which commute with everything and are kept
// at the end. Even P-class generators are truncated: (dalpha)^m = 0 for m >= n.

#include "lbf/exterior/scalar.hpp"

#include <algorithm>
#include <bit>
#include <compare>
#include <memory>
#include <sstream>

namespace lbf::exterior {

struct Generator {
  std::string name;
  int degree = 1;                // 1 or 2
  bool p_class = false;          // truncated factor (alpha, dalpha, lambda, dlambda)
  std::optional<Atom> coordinate;  // dx for a coordinate x
  std::string derivative;        // name of d(generator) when it is another generator
  std::string dual;              // name of the dual tangent vector (odd only)
};

class Algebra {
 public:
  static constexpr std::size_t kMaxOdd = 32;
  static constexpr std::size_t kMaxEven = 4;

  Algebra(std::string name, int n, std::vector<Generator> gens) : name_(std::move(name)), n_(n) {
    if (n < 1) throw ConfigError("algebra '" + name_ + "': n must be positive");
    for (auto& g : gens) {
      if (g.degree == 1) {
        odd_.push_back(std::move(g));
      } else if (g.degree == 2) {
        even_.push_back(std::move(g));
      } else {
        throw ConfigError("algebra '" + name_ + "': generator degree must be 1 or 2");
      }
    }
    if (odd_.size() > kMaxOdd || even_.size() > kMaxEven) {
      throw ConfigError("algebra '" + name_ + "': too many generators");
    }
    for (std::size_t i = 0; i < odd_.size(); ++i) {
      const auto& g = odd_[i];
      if (g.coordinate) coordinate_slot_[static_cast<std::size_t>(*g.coordinate)] = static_cast<int>(i);
      if (!g.derivative.empty()) {
        auto e = even_index(g.derivative);
        if (!e) throw ConfigError("algebra '" + name_ + "': d(" + g.name + ") must be an even generator");
        d_target_.push_back(static_cast<int>(*e));
      } else {
        d_target_.push_back(-1);
      }
    }
  }

  const std::string& name() const { return name_; }
  int n() const { return n_; }
  const std::vector<Generator>& odd() const { return odd_; }
  const std::vector<Generator>& even() const { return even_; }

  std::optional<std::size_t> odd_index(std::string_view name) const {
    for (std::size_t i = 0; i < odd_.size(); ++i) {
      if (odd_[i].name == name) return i;
    }
    return std::nullopt;
  }
  std::optional<std::size_t> even_index(std::string_view name) const {
    for (std::size_t i = 0; i < even_.size(); ++i) {
      if (even_[i].name == name) return i;
    }
    return std::nullopt;
  }
  std::optional<std::size_t> dual_index(std::string_view dual) const {
    for (std::size_t i = 0; i < odd_.size(); ++i) {
      if (odd_[i].dual == dual) return i;
    }
    return std::nullopt;
  }
  /// Odd slot holding d(x), or -1.
  int coordinate_slot(Atom x) const { return coordinate_slot_[static_cast<std::size_t>(x)]; }
  /// Even slot of d(odd generator i), or -1 when d of it vanishes.
  int d_target(std::size_t odd_slot) const { return d_target_[odd_slot]; }

 private:
  std::string name_;
  int n_;
  std::vector<Generator> odd_;
  std::vector<Generator> even_;
  std::array<int, kAtomCount> coordinate_slot_ = [] {
    std::array<int, kAtomCount> a{};
    a.fill(-1);
    return a;
  }();
  std::vector<int> d_target_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

inline AlgebraPtr make_algebra(std::string name, int n, std::vector<Generator> gens) {
  return std::make_shared<const Algebra>(std::move(name), n, std::move(gens));
}

struct WedgeMonomial {
  std::uint32_t odd = 0;
  std::array<std::uint8_t, Algebra::kMaxEven> even{};

  int degree() const {
    int d = std::popcount(odd);
    for (auto e : even) d += 2 * e;
    return d;
  }
  auto operator<=>(const WedgeMonomial&) const = default;
};

namespace detail {

// Sign of (a-block) ^ (b-block) after sorting, 0 if they share a generator.
inline int odd_product_sign(std::uint32_t a, std::uint32_t b) {
  if (a & b) return 0;
  int swaps = 0;
  for (std::uint32_t rest = b; rest != 0; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    const std::uint32_t above = j >= 31 ? 0u : (~0u << (j + 1));
    swaps += std::popcount(a & above);
  }
  return (swaps & 1) ? -1 : 1;
}

inline int odd_prefix_parity(std::uint32_t mask, int bit) {
  const std::uint32_t below = bit == 0 ? 0u : (~0u >> (32 - bit));
  return (std::popcount(mask & below) & 1) ? -1 : 1;
}

}  // namespace detail

class TangentSymbol;

class Form {
 public:
  explicit Form(AlgebraPtr alg) : alg_(std::move(alg)) {
    if (!alg_) throw ConfigError("form: null algebra");
  }

  static Form scalar(AlgebraPtr alg, const Scalar& c) {
    Form out(std::move(alg));
    out.add(WedgeMonomial{}, c);
    return out;
  }

  /// The generator called `name` (odd or even).
  static Form gen(AlgebraPtr alg, std::string_view name) {
    Form out(alg);
    WedgeMonomial m;
    if (auto i = alg->odd_index(name)) {
      m.odd = 1u << *i;
    } else if (auto j = alg->even_index(name)) {
      m.even[*j] = 1;
      if (alg->even()[*j].p_class && alg->n() <= 1) return out;
    } else {
      throw ConfigError("algebra '" + alg->name() + "' has no generator '" + std::string(name) + "'");
    }
    out.add(m, Scalar(1));
    return out;
  }

  /// d of a coordinate atom.
  static Form dcoord(AlgebraPtr alg, Atom x) {
    const int slot = alg->coordinate_slot(x);
    if (slot < 0) {
      throw ConfigError("algebra '" + alg->name() + "' has no differential for '" + std::string(atom_name(x)) + "'");
    }
    Form out(alg);
    out.add(WedgeMonomial{1u << slot, {}}, Scalar(1));
    return out;
  }

  const AlgebraPtr& algebra() const { return alg_; }
  const std::map<WedgeMonomial, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Scalar coefficient(const WedgeMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar() : it->second;
  }

  /// Coefficient of the 0-form part.
  Scalar scalar_part() const { return coefficient(WedgeMonomial{}); }

  Form& operator+=(const Form& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  Form& operator-=(const Form& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  Form operator-() const { return Scalar(-1) * *this; }

  friend Form operator*(const Scalar& c, const Form& a) {
    Form out(a.alg_);
    if (c.is_zero()) return out;
    for (const auto& [m, k] : a.terms_) out.add(m, c * k);
    return out;
  }

  /// Graded-commutative product with truncation.
  friend Form wedge(const Form& a, const Form& b) {
    a.check_same(b);
    Form out(a.alg_);
    const auto& alg = *a.alg_;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        const int sign = detail::odd_product_sign(ma.odd, mb.odd);
        if (sign == 0) continue;
        WedgeMonomial m{ma.odd | mb.odd, {}};
        bool dead = false;
        for (std::size_t k = 0; k < alg.even().size(); ++k) {
          const int e = ma.even[k] + mb.even[k];
          if (alg.even()[k].p_class && e >= alg.n()) {
            dead = true;
            break;
          }
          m.even[k] = static_cast<std::uint8_t>(e);
        }
        if (dead) continue;
        Scalar c = ca * cb;
        out.add(m, sign < 0 ? -c : c);
      }
    }
    return out;
  }
  friend Form operator^(const Form& a, const Form& b) { return wedge(a, b); }

  Form power(unsigned k) const {
    Form out = scalar(alg_, Scalar(1));
    for (unsigned i = 0; i < k; ++i) out = wedge(out, *this);
    return out;
  }

  /// Exterior derivative via the Leibniz rule.
  Form d(const DerivativeRules& rules = DerivativeRules::standard()) const {
    Form out(alg_);
    const auto& alg = *alg_;
    for (const auto& [m, c] : terms_) {
      // d(coefficient) ^ monomial
      for (std::size_t i = 0; i < kAtomCount; ++i) {
        const auto x = static_cast<Atom>(i);
        if (!is_variable(x)) continue;
        Scalar partial = c.diff(x, rules);
        if (partial.is_zero()) continue;
        const int slot = alg.coordinate_slot(x);
        if (slot < 0) {
          throw ConfigError("coefficient depends on '" + std::string(atom_name(x)) +
                            "' which has no differential in algebra '" + alg.name() + "'");
        }
        WedgeMonomial single{1u << slot, {}};
        Form piece(alg_);
        piece.add(single, Scalar(1));
        Form rest(alg_);
        rest.add(m, partial);
        out += wedge(piece, rest);
      }
      // coefficient * d(monomial): only generators with d = even generator contribute
      for (std::uint32_t bits = m.odd; bits != 0; bits &= bits - 1) {
        const int i = std::countr_zero(bits);
        const int target = alg.d_target(static_cast<std::size_t>(i));
        if (target < 0) continue;
        WedgeMonomial dm = m;
        dm.odd &= ~(1u << i);
        const int e = dm.even[target] + 1;
        if (alg.even()[target].p_class && e >= alg.n()) continue;
        dm.even[target] = static_cast<std::uint8_t>(e);
        const int sign = detail::odd_prefix_parity(m.odd, i);
        out.add(dm, sign < 0 ? -c : c);
      }
    }
    return out;
  }

  /// Apply a substitution atom -> value to every coefficient.
  Form substitute(Atom a, const Scalar& value) const {
    Form out(alg_);
    for (const auto& [m, c] : terms_) out.add(m, c.substitute(a, value));
    return out;
  }

  friend bool equals(const Form& a, const Form& b) {
    a.check_same(b);
    return (a - b).is_zero();
  }

  /// Canonical text: "(coeff) * g1^g2 + ..."; 0-forms use "1" as the monomial.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c.str() << ") * " << monomial_str(m);
    }
    return os.str();
  }

  std::string monomial_str(const WedgeMonomial& m) const {
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < alg_->odd().size(); ++i) {
      if (m.odd & (1u << i)) parts.push_back(alg_->odd()[i].name);
    }
    for (std::size_t k = 0; k < alg_->even().size(); ++k) {
      for (int e = 0; e < m.even[k]; ++e) parts.push_back(alg_->even()[k].name);
    }
    if (parts.empty()) return "1";
    std::string s = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) s += "^" + parts[i];
    return s;
  }

  void check_same(const Form& o) const {
    if (alg_ != o.alg_) {
      throw ConfigError("mismatched generator algebras: '" + alg_->name() + "' (n=" + std::to_string(alg_->n()) +
                        ") vs '" + o.alg_->name() + "' (n=" + std::to_string(o.alg_->n()) + ")");
    }
  }

  void add(const WedgeMonomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

 private:
  AlgebraPtr alg_;
  std::map<WedgeMonomial, Scalar> terms_;
};

inline Form wedge(const Form& a, const Form& b);
inline bool equals(const Form& a, const Form& b);

inline Form ext_d(const Form& a, const DerivativeRules& rules = DerivativeRules::standard()) { return a.d(rules); }

/// Formal combination of the duals of the odd generators.
class TangentSymbol {
 public:
  explicit TangentSymbol(AlgebraPtr alg) : alg_(std::move(alg)), comps_(alg_->odd().size()) {}

  /// The dual vector named `dual` (e.g. "d/dr1", "R_alpha").
  static TangentSymbol basis(AlgebraPtr alg, std::string_view dual) {
    auto i = alg->dual_index(dual);
    if (!i) throw ConfigError("algebra '" + alg->name() + "' has no tangent vector '" + std::string(dual) + "'");
    TangentSymbol v(std::move(alg));
    v.comps_[*i] = Scalar(1);
    return v;
  }

  const AlgebraPtr& algebra() const { return alg_; }
  const Scalar& component(std::size_t odd_slot) const { return comps_[odd_slot]; }

  TangentSymbol& operator+=(const TangentSymbol& o) {
    check_same(o);
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
    return *this;
  }
  TangentSymbol& operator-=(const TangentSymbol& o) {
    check_same(o);
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= o.comps_[i];
    return *this;
  }
  friend TangentSymbol operator+(TangentSymbol a, const TangentSymbol& b) { return a += b; }
  friend TangentSymbol operator-(TangentSymbol a, const TangentSymbol& b) { return a -= b; }
  friend TangentSymbol operator*(const Scalar& c, TangentSymbol v) {
    for (auto& x : v.comps_) x = c * x;
    return v;
  }

  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < comps_.size(); ++i) {
      if (comps_[i].is_zero()) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << comps_[i].str() << ") " << alg_->odd()[i].dual;
    }
    return first ? "0" : os.str();
  }

  void check_same(const TangentSymbol& o) const {
    if (alg_ != o.alg_) throw ConfigError("mismatched generator algebras in tangent arithmetic");
  }

 private:
  AlgebraPtr alg_;
  std::vector<Scalar> comps_;
};

/// Interior product: graded derivation of degree -1. Even generators are
/// killed (iota_v dalpha = 0 for every vector in the table).
inline Form interior(const TangentSymbol& v, const Form& a) {
  if (v.algebra() != a.algebra()) {
    throw ConfigError("mismatched generator algebras: vector on '" + v.algebra()->name() + "', form on '" +
                      a.algebra()->name() + "'");
  }
  Form out(a.algebra());
  for (const auto& [m, c] : a.terms()) {
    for (std::uint32_t bits = m.odd; bits != 0; bits &= bits - 1) {
      const int i = std::countr_zero(bits);
      const Scalar& vi = v.component(static_cast<std::size_t>(i));
      if (vi.is_zero()) continue;
      WedgeMonomial reduced = m;
      reduced.odd &= ~(1u << i);
      Scalar coeff = vi * c;
      out.add(reduced, detail::odd_prefix_parity(m.odd, i) < 0 ? -coeff : coeff);
    }
  }
  return out;
}

/// Omega(v, w) for a 2-form: iota_w iota_v Omega.
inline Scalar pair2(const Form& omega, const TangentSymbol& v, const TangentSymbol& w) {
  return interior(w, interior(v, omega)).scalar_part();
}

}  // namespace lbf::exterior
