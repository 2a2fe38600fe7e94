#pragma once

// Exact multivariate polynomials over Q in variables v0..vm.

#include "lbf/core.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace lbf::blowup {

using Exponent = std::vector<int>;

/// Graded-lex order: lower total degree first, then lexicographic with v0
/// the most significant variable (v0^2 before v1^2).
struct GradedLex {
  bool operator()(const Exponent& a, const Exponent& b) const {
    const int da = std::accumulate(a.begin(), a.end(), 0), db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da < db;
    return a > b;
  }
};

class MultiPoly {
 public:
  using Terms = std::map<Exponent, Rational, GradedLex>;

  explicit MultiPoly(std::size_t nvars = 0, std::string prefix = "x") : nvars_(nvars), prefix_(std::move(prefix)) {}

  static MultiPoly constant(std::size_t nvars, const Rational& c, std::string prefix = "x") {
    MultiPoly p(nvars, std::move(prefix));
    p.add(Exponent(nvars, 0), c);
    return p;
  }
  static MultiPoly variable(std::size_t nvars, std::size_t i, int power = 1, std::string prefix = "x") {
    if (i >= nvars) throw ConfigError("MultiPoly::variable: index out of range");
    MultiPoly p(nvars, std::move(prefix));
    Exponent e(nvars, 0);
    e[i] = power;
    p.add(e, 1);
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const std::string& prefix() const { return prefix_; }
  MultiPoly renamed(std::string prefix) const {
    MultiPoly out = *this;
    out.prefix_ = std::move(prefix);
    return out;
  }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  Rational value_at_origin() const { return coefficient(Exponent(nvars_, 0)); }

  void add(const Exponent& e, const Rational& c) {
    if (e.size() != nvars_) throw ConfigError("MultiPoly: exponent arity mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add(e, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add(e, -c);
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check(b);
    MultiPoly out(a.nvars_, a.prefix_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e(a.nvars_);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add(e, ca * cb);
      }
    }
    return out;
  }
  friend MultiPoly operator*(const Rational& c, const MultiPoly& a) {
    MultiPoly out(a.nvars_, a.prefix_);
    for (const auto& [e, v] : a.terms_) out.add(e, c * v);
    return out;
  }

  MultiPoly pow(unsigned k) const {
    MultiPoly out = constant(nvars_, 1, prefix_);
    for (unsigned i = 0; i < k; ++i) out = out * *this;
    return out;
  }

  /// Equality of polynomials; the variable prefix is presentation only.
  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  /// Smallest exponent of variable i over all terms.
  int min_exponent(std::size_t i) const {
    if (terms_.empty()) return 0;
    int m = terms_.begin()->first[i];
    for (const auto& [e, c] : terms_) m = std::min(m, e[i]);
    return m;
  }

  /// Divide by v_i^k (requires divisibility).
  MultiPoly divide_by_power(std::size_t i, int k) const {
    if (min_exponent(i) < k) throw DomainError("MultiPoly: not divisible");
    MultiPoly out(nvars_, prefix_);
    for (const auto& [e, c] : terms_) {
      Exponent q = e;
      q[i] -= k;
      out.add(q, c);
    }
    return out;
  }

  MultiPoly partial(std::size_t i) const {
    MultiPoly out(nvars_, prefix_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponent q = e;
      q[i] -= 1;
      out.add(q, c * e[i]);
    }
    return out;
  }

  int total_degree(const Exponent& e) const { return std::accumulate(e.begin(), e.end(), 0); }

  /// Canonical text in graded-lex order, e.g. "y0^2 + y1^2 + y2^4" or "1 + y0^2".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      const Rational mag = c < 0 ? Rational(-c) : c;
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      const bool is_const = total_degree(e) == 0;
      bool wrote = false;
      if (mag != 1 || is_const) {
        os << mag.str();
        wrote = true;
      }
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (wrote) os << "*";
        os << prefix_ << i;
        if (e[i] != 1) os << "^" << e[i];
        wrote = true;
      }
    }
    return os.str();
  }

 private:
  void check(const MultiPoly& o) const {
    if (o.nvars_ != nvars_) throw ConfigError("MultiPoly: variable count mismatch");
  }

  std::size_t nvars_;
  std::string prefix_;
  Terms terms_;
};

}  // namespace lbf::blowup
