#pragma once

// Point blow-ups of affine space at the origin, chart by chart, and the
// resolution of x0^2 + ... + xn^2 + x_{n+1}^{k+1}.

#include "lbf/blowup/multipoly.hpp"
#include "lbf/mcg/twist_word.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lbf::blowup {

/// Total transform in chart j: x_i -> y_i y_j (i != j), x_j -> y_j.
inline MultiPoly blowup_chart(const MultiPoly& p, std::size_t j) {
  if (j >= p.nvars()) throw ConfigError("blowup_chart: chart index out of range");
  if (p.value_at_origin() != 0) throw DomainError("blowup_chart: polynomial does not vanish at the origin");
  MultiPoly out(p.nvars(), "y");
  for (const auto& [e, c] : p.terms()) {
    Exponent q = e;
    int total = 0;
    for (int v : e) total += v;
    q[j] = total;  // y_j collects one factor from every variable
    out.add(q, c);
  }
  return out;
}

struct ProperTransform {
  MultiPoly poly;
  int multiplicity = 0;
};

/// Total transform divided by the largest power of y_j.
inline ProperTransform proper_transform(const MultiPoly& p, std::size_t j) {
  const MultiPoly total = blowup_chart(p, j);
  const int m = total.min_exponent(j);
  return {total.divide_by_power(j, m), m};
}

struct SingularityVerdict {
  enum class Kind { smooth, a_type, unclassified };
  Kind kind = Kind::unclassified;
  int m = 0;           // A_m
  std::string reason;  // for unclassified

  static SingularityVerdict smooth() { return {Kind::smooth, 0, ""}; }
  static SingularityVerdict a_type(int m) { return {Kind::a_type, m, ""}; }
  static SingularityVerdict unclassified(std::string why) { return {Kind::unclassified, 0, std::move(why)}; }

  std::string str() const {
    switch (kind) {
      case Kind::smooth: return "Smooth";
      case Kind::a_type: return "A" + std::to_string(m);
      case Kind::unclassified: return "Unclassified(" + reason + ")";
    }
    return "?";
  }
  friend bool operator==(const SingularityVerdict&, const SingularityVerdict&) = default;
};

/// Verdict at the origin of the chart: smooth when the origin is off the
/// hypersurface or the gradient is non-zero there; A_m when p is a unit
/// multiple of q0^2 + ... + qs^2 + q^{m+1} in distinct variables covering all
/// of them.
inline SingularityVerdict classify(const MultiPoly& p) {
  if (p.is_zero()) return SingularityVerdict::unclassified("zero polynomial");
  if (p.value_at_origin() != 0) return SingularityVerdict::smooth();
  for (std::size_t i = 0; i < p.nvars(); ++i) {
    if (p.partial(i).value_at_origin() != 0) return SingularityVerdict::smooth();
  }
  const auto not_a = SingularityVerdict::unclassified("not A-type normal form");
  std::vector<int> power(p.nvars(), 0);
  std::optional<Rational> unit;
  for (const auto& [e, c] : p.terms()) {
    std::size_t var = p.nvars();
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (var != p.nvars()) return not_a;  // mixed monomial
      var = i;
    }
    if (power[var] != 0) return not_a;  // two terms in one variable
    power[var] = e[var];
    if (unit && *unit != c) return not_a;
    unit = c;
  }
  int odd_one = 0;
  for (int k : power) {
    if (k == 0) return not_a;  // variable missing: non-isolated
    if (k == 2) continue;
    if (odd_one != 0) return not_a;
    odd_one = k;
  }
  return SingularityVerdict::a_type(odd_one == 0 ? 1 : odd_one - 1);
}

/// x0^2 + ... + xn^2 + x_{n+1}^{k+1}
inline MultiPoly a_k_polynomial(int k, int n) {
  if (k < 1 || n < 0) throw DomainError("a_k_polynomial: k >= 1 and n >= 0 required");
  const auto nv = static_cast<std::size_t>(n + 2);
  MultiPoly p(nv, "x");
  for (std::size_t i = 0; i + 1 < nv; ++i) p += MultiPoly::variable(nv, i, 2);
  p += MultiPoly::variable(nv, nv - 1, k + 1);
  return p;
}

struct ResolutionStep {
  std::size_t chart = 0;
  MultiPoly poly;
  int multiplicity = 0;
  SingularityVerdict verdict;
};

struct ResolutionTrace {
  int k = 0, n = 0;
  MultiPoly start;
  SingularityVerdict start_verdict;
  std::vector<ResolutionStep> steps;
  bool halted = false;     // stopped on an unclassified verdict
  std::string diagnostic;  // why it halted

  std::size_t step_count() const { return steps.size(); }
  bool resolved() const { return !halted && !steps.empty() && steps.back().verdict.kind == SingularityVerdict::Kind::smooth; }
};

/// Blow up repeatedly in one chart while the verdict is A-type.
inline ResolutionTrace resolve_from(const MultiPoly& start, std::size_t chart) {
  if (chart >= start.nvars()) throw ConfigError("resolve: chart index out of range");
  ResolutionTrace tr;
  tr.start = start;
  tr.start_verdict = classify(start);
  MultiPoly cur = start;
  SingularityVerdict v = tr.start_verdict;
  // A_m drops to A_{m-2} per step in the designated chart; the guard stops a
  // chart that makes no progress
  int guard = 0;
  for (const auto& [e, c] : start.terms()) guard = std::max(guard, start.total_degree(e));
  while (v.kind == SingularityVerdict::Kind::a_type && guard-- >= 0) {
    auto [poly, mult] = proper_transform(cur, chart);
    v = classify(poly);
    tr.steps.push_back({chart, poly, mult, v});
    cur = poly;
  }
  if (v.kind != SingularityVerdict::Kind::smooth) {
    tr.halted = true;
    tr.diagnostic = "not resolved after step " + std::to_string(tr.steps.size()) + ": " + cur.str() + " is " + v.str();
  }
  return tr;
}

/// Blow up in the last chart until the verdict is smooth.
inline ResolutionTrace resolve_A(int k, int n) {
  const MultiPoly p = a_k_polynomial(k, n);
  ResolutionTrace tr = resolve_from(p, p.nvars() - 1);
  tr.k = k;
  tr.n = n;
  return tr;
}

// ---------------------------------------------------------------------------

/// Chart audit against the printed display for j != last:
/// sum_{i != j, last} y_i^2 + 1 + y_j^{k-1} y_last^{k+1}.
struct ChartAudit {
  std::size_t chart = 0;
  MultiPoly computed, printed;
  int multiplicity = 0;
  bool match() const { return computed == printed; }
};

inline std::vector<ChartAudit> audit_charts(int k, int n) {
  const MultiPoly p = a_k_polynomial(k, n);
  const std::size_t nv = p.nvars(), last = nv - 1;
  std::vector<ChartAudit> out;
  for (std::size_t j = 0; j < last; ++j) {
    auto [poly, mult] = proper_transform(p, j);
    MultiPoly printed = MultiPoly::constant(nv, 1, "y");
    for (std::size_t i = 0; i < last; ++i) {
      if (i != j) printed += MultiPoly::variable(nv, i, 2, "y");
    }
    printed += MultiPoly::variable(nv, j, k - 1, "y") * MultiPoly::variable(nv, last, k + 1, "y");
    out.push_back({j, poly, printed, mult});
  }
  return out;
}

/// Word-side mirror of the trace: each blow-up trades the two leading
/// remaining sphere twists for one fibered twist.
inline std::vector<mcg::SubstitutionStep> mirror_chain(const ResolutionTrace& tr) {
  std::vector<mcg::SubstitutionStep> out;
  mcg::TwistWord cur = mcg::milnor_word(tr.k, tr.n);
  for (std::size_t i = 0; i < tr.steps.size(); ++i) {
    mcg::TwistWord next = mcg::substitute(cur, i, mcg::Direction::contract);
    out.push_back({i, mcg::Direction::contract, cur, next});
    cur = std::move(next);
  }
  return out;
}

}  // namespace lbf::blowup
