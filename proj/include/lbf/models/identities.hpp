#pragma once

#include "lbf/contact/profile.hpp"
#include "lbf/models/forms.hpp"

#include <array>
#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace lbf::models {

enum class IdentityId {
  LIOUVILLE_DUAL,
  OMEGA_ALPHA_KERNEL,
  OMEGA_ALPHABAR_KERNEL,
  TOP_POWER,
  OMEGA1_KERNEL,
  MOSER_DIFF,
  VERTICAL_SPLIT,
  HESSIAN,
  CONTACT_VOLUME,
};

inline constexpr std::array<IdentityId, 9> kAllIdentities = {
    IdentityId::LIOUVILLE_DUAL, IdentityId::OMEGA_ALPHA_KERNEL, IdentityId::OMEGA_ALPHABAR_KERNEL,
    IdentityId::TOP_POWER,      IdentityId::OMEGA1_KERNEL,      IdentityId::MOSER_DIFF,
    IdentityId::VERTICAL_SPLIT, IdentityId::HESSIAN,            IdentityId::CONTACT_VOLUME};

inline std::string_view identity_name(IdentityId id) {
  switch (id) {
    case IdentityId::LIOUVILLE_DUAL: return "LIOUVILLE_DUAL";
    case IdentityId::OMEGA_ALPHA_KERNEL: return "OMEGA_ALPHA_KERNEL";
    case IdentityId::OMEGA_ALPHABAR_KERNEL: return "OMEGA_ALPHABAR_KERNEL";
    case IdentityId::TOP_POWER: return "TOP_POWER";
    case IdentityId::OMEGA1_KERNEL: return "OMEGA1_KERNEL";
    case IdentityId::MOSER_DIFF: return "MOSER_DIFF";
    case IdentityId::VERTICAL_SPLIT: return "VERTICAL_SPLIT";
    case IdentityId::HESSIAN: return "HESSIAN";
    case IdentityId::CONTACT_VOLUME: return "CONTACT_VOLUME";
  }
  return "?";
}

inline std::optional<IdentityId> identity_from_name(std::string_view s) {
  for (auto id : kAllIdentities) {
    if (identity_name(id) == s) return id;
  }
  return std::nullopt;
}

struct IdentityReport {
  IdentityId id{};
  int n = 0;
  bool exact = false;            // residual normalized to zero
  std::string residual_text;     // canonical text of the residual ("0" on success)
  std::string coefficient_text;  // computed coefficient where the identity has one
  std::string detail;
  double ms = 0;
};

/// Quoted top-power coefficient n(n+1)(1 - r1^2 + r2^2(1 - f r1^2))^{n-1}(r1^2 r2^2 u' + f r2^2 + 1).
inline Scalar quoted_top_power_coefficient(int n) {
  const Scalar r1s = var(Atom::r1, 2), r2s = var(Atom::r2, 2), f = var(Atom::f);
  const Scalar base = 1 - r1s + r2s * (1 - f * r1s);
  const Scalar last = r1s * r2s * var(Atom::du) + f * r2s + 1;
  return Scalar(n * (n + 1)) * base.pow(static_cast<unsigned>(n - 1)) * last;
}

/// Quoted contact volume coefficient n f^{n-1}(f g' - f' g).
inline Scalar quoted_contact_coefficient(int n) {
  const Scalar fc = var(Atom::fc), gc = var(Atom::gc);
  return Scalar(n) * fc.pow(static_cast<unsigned>(n - 1)) * (fc * var(Atom::dgc) - var(Atom::dfc) * gc);
}

namespace detail {

inline exterior::WedgeMonomial monomial_of(const Form& unit) {
  if (unit.terms().size() != 1) throw Error("expected a single monomial");
  return unit.terms().begin()->first;
}

/// d(r1^2) ^ (dth1 - alpha) ^ d(r2^2) ^ (dth2 + alpha) ^ (dalpha)^{n-1}, without the scalar.
inline Form top_power_frame(const ModelForms& m, int n) {
  const auto& a = m.line_bundle();
  return (m.s(a, 2 * var(Atom::r1)) ^ m.g(a, "dr1")) ^ m.theta1_minus_alpha() ^
         (m.s(a, 2 * var(Atom::r2)) ^ m.g(a, "dr2")) ^ m.theta2_plus_alpha() ^
         m.g(a, "dalpha").power(static_cast<unsigned>(n - 1));
}

/// Sum of squares of scalar residuals as a 0-form: zero iff every part is zero.
inline Form square_sum(const AlgebraPtr& a, const std::vector<Scalar>& parts) {
  Scalar total;
  for (const auto& p : parts) total += p * p;
  return Form::scalar(a, total);
}

inline void finish(IdentityReport& rep, const Form& residual) {
  rep.exact = residual.is_zero();
  rep.residual_text = rep.exact ? "0" : residual.str();
}

/// Multi-part checks: exact iff every part vanishes; the residual names the
/// offending parts.
inline void finish_parts(IdentityReport& rep, const AlgebraPtr& a, const std::vector<std::string>& labels,
                         const std::vector<Scalar>& parts) {
  finish(rep, square_sum(a, parts));
  if (rep.exact) return;
  std::string text;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].is_zero()) continue;
    if (!text.empty()) text += "; ";
    text += labels[i] + " = " + parts[i].str();
  }
  rep.residual_text = text;
}

}  // namespace detail

inline IdentityReport verify_identity(IdentityId id, const ModelConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const int n = cfg.n;
  ModelForms m(n);
  IdentityReport rep;
  rep.id = id;
  rep.n = n;

  switch (id) {
    case IdentityId::LIOUVILLE_DUAL: {
      detail::finish(rep, exterior::interior(m.liouville_bar(), m.omega_bar()) - m.lambda_bar());
      rep.detail = "i_X omega_bar - lambda_bar, X = " + m.liouville_bar().str();
      break;
    }
    case IdentityId::OMEGA_ALPHA_KERNEL: {
      const auto& a = m.boothby_wang();
      auto v = TangentSymbol::basis(a, "R_alpha") - TangentSymbol::basis(a, "d/dth");
      detail::finish(rep, exterior::interior(v, m.omega_alpha()));
      rep.detail = "i_v omega_alpha, v = " + v.str();
      break;
    }
    case IdentityId::OMEGA_ALPHABAR_KERNEL: {
      const auto& a = m.boothby_wang();
      auto v = TangentSymbol::basis(a, "R_alpha") + TangentSymbol::basis(a, "d/dth");
      detail::finish(rep, exterior::interior(v, m.omega_bar()));
      rep.detail = "i_v omega_bar, v = " + v.str();
      break;
    }
    case IdentityId::TOP_POWER: {
      const Form top = m.omega1_tilde().power(static_cast<unsigned>(n + 1));
      const Form frame = detail::top_power_frame(m, n);
      const Scalar quoted = quoted_top_power_coefficient(n);
      // read the computed coefficient off dr1^dth1^dr2^dth2^dalpha^{n-1}
      const auto& a = m.line_bundle();
      const auto key = detail::monomial_of(m.g(a, "dr1") ^ m.g(a, "dth1") ^ m.g(a, "dr2") ^ m.g(a, "dth2") ^
                                           m.g(a, "dalpha").power(static_cast<unsigned>(n - 1)));
      const Scalar computed = top.coefficient(key).divide_by_monomial(4 * var(Atom::r1) * var(Atom::r2));
      rep.coefficient_text = computed.str();
      detail::finish(rep, top - quoted * frame);
      rep.detail = "Omega1^{n+1} - C d(r1^2)^(dth1-alpha)^d(r2^2)^(dth2+alpha)^dalpha^{n-1}";
      break;
    }
    case IdentityId::OMEGA1_KERNEL: {
      const auto& a = m.line_bundle();
      auto v = TangentSymbol::basis(a, "d/dth1") - TangentSymbol::basis(a, "d/dth2") +
               TangentSymbol::basis(a, "R_alpha");
      detail::finish(rep, exterior::interior(v, m.omega1_tilde()));
      rep.detail = "i_v Omega1, v = " + v.str();
      break;
    }
    case IdentityId::MOSER_DIFF: {
      const Scalar p = (1 - var(Atom::f)) * var(Atom::r1, 2) * var(Atom::r2, 2);
      const Form diff = m.omega0() - m.omega1_tilde();
      detail::finish(rep, diff - exterior::ext_d(p * m.theta1_minus_alpha()));
      rep.detail = "Omega0 - Omega1 - d((1-f) r1^2 r2^2 (dth1 - alpha))";
      break;
    }
    case IdentityId::VERTICAL_SPLIT: {
      const auto& a = m.line_bundle();
      const auto& rules = exterior::DerivativeRules::standard();
      const Scalar mu = var(Atom::mu), dmu = var(Atom::dmu), r2 = var(Atom::r2);
      const Scalar B = ModelForms::b_coefficient();
      const Scalar B1 = B.diff(Atom::r1, rules), B2 = B.diff(Atom::r2, rules);
      auto basis = [&](const char* d) { return TangentSymbol::basis(a, d); };
      const std::array<TangentSymbol, 2> kernel = {mu * basis("d/dr1") - (dmu * r2) * basis("d/dr2"),
                                                   basis("d/dth1") - basis("d/dth2")};
      const std::array<TangentSymbol, 2> complement = {
          (2 * dmu * var(Atom::r2, 2)) * basis("d/dth1") + (mu * B1 - dmu * r2 * B2) * basis("d/dth2"),
          (2 * r2 - B2) * basis("d/dr1") + B1 * basis("d/dr2")};
      const Form omega = m.omega1_tilde();
      const Form dh = exterior::ext_d(m.s(a, m.h()));
      std::vector<Scalar> parts;
      std::vector<std::string> labels;
      for (std::size_t i = 0; i < kernel.size(); ++i) {
        for (std::size_t j = 0; j < complement.size(); ++j) {
          parts.push_back(exterior::pair2(omega, kernel[i], complement[j]));
          labels.push_back("Omega1(k" + std::to_string(i + 1) + ",c" + std::to_string(j + 1) + ")");
        }
      }
      for (std::size_t j = 0; j < complement.size(); ++j) {
        parts.push_back(exterior::interior(complement[j], dh).scalar_part());
        labels.push_back("dh(c" + std::to_string(j + 1) + ")");
      }
      detail::finish_parts(rep, a, labels, parts);
      rep.detail = "sum of squares of Omega1(k_i, c_j) and dh(c_j)";
      break;
    }
    case IdentityId::HESSIAN: {
      const auto& rules = exterior::DerivativeRules::standard();
      const Scalar w = var(Atom::z1) * var(Atom::z2);
      const std::array<Atom, 2> z = {Atom::z1, Atom::z2};
      std::array<std::array<Scalar, 2>, 2> hess;
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          hess[i][j] = w.diff(z[i], rules).diff(z[j], rules).substitute(Atom::z1, 0).substitute(Atom::z2, 0);
        }
      }
      const Scalar det = hess[0][0] * hess[1][1] - hess[0][1] * hess[1][0];
      const std::vector<Scalar> parts = {hess[0][0], hess[0][1] - 1, hess[1][0] - 1, hess[1][1], det + 1};
      detail::finish_parts(rep, m.line_bundle(), {"H11", "H12 - 1", "H21 - 1", "H22", "det + 1"}, parts);
      rep.coefficient_text = "[[" + hess[0][0].str() + "," + hess[0][1].str() + "],[" + hess[1][0].str() + "," +
                             hess[1][1].str() + "]] det " + det.str();
      rep.detail = "normal Hessian of z1*z2 at the origin";
      break;
    }
    case IdentityId::CONTACT_VOLUME: {
      const auto& a = m.open_book();
      const Form beta = m.beta();
      const Form vol = beta ^ exterior::ext_d(beta).power(static_cast<unsigned>(n));
      const Form frame = m.g(a, "lambda") ^ m.g(a, "dlambda").power(static_cast<unsigned>(n - 1)) ^ m.g(a, "dr") ^
                         m.g(a, "dphi");
      rep.coefficient_text = vol.coefficient(detail::monomial_of(frame)).str();
      detail::finish(rep, vol - quoted_contact_coefficient(n) * frame);
      rep.detail = "beta^(dbeta)^n - n f^{n-1}(f g' - f' g) lambda^dlambda^{n-1}^dr^dphi";
      break;
    }
  }
  rep.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

// ---------------------------------------------------------------------------
// Numeric positivity of the quoted coefficients under concrete realizations.

struct PositivityReport {
  IdentityId id{};
  int n = 0;
  int resolution = 0;
  double min_value = 0;
  std::vector<double> argmin;  // (r1, r2) or (r)
  bool positive() const { return min_value > 0; }
};

inline PositivityReport positivity_grid(IdentityId id, const ModelConfig& cfg, int resolution) {
  cfg.validate();
  if (resolution < 2) throw ConfigError("positivity_grid: resolution >= 2 required");
  PositivityReport rep;
  rep.id = id;
  rep.n = cfg.n;
  rep.resolution = resolution;
  rep.min_value = INFINITY;

  if (id == IdentityId::TOP_POWER) {
    const Realizations real(cfg);
    const Scalar coeff = quoted_top_power_coefficient(cfg.n);
    exterior::Bindings b;
    b.functions[Atom::f] = [&](const auto& v) { return real.u(v.at(Atom::r1) * v.at(Atom::r1) + v.at(Atom::r2) * v.at(Atom::r2)); };
    b.functions[Atom::du] = [&](const auto& v) { return real.du(v.at(Atom::r1) * v.at(Atom::r1) + v.at(Atom::r2) * v.at(Atom::r2)); };
    const double r1_max = 0.9 * cfg.delta, r2_max = cfg.c;
    for (int i = 0; i < resolution; ++i) {
      for (int j = 0; j < resolution; ++j) {
        const double r1 = r1_max * i / (resolution - 1), r2 = r2_max * j / (resolution - 1);
        b.bind(Atom::r1, r1).bind(Atom::r2, r2);
        const double v = exterior::eval_numeric(coeff, b);
        if (v < rep.min_value) {
          rep.min_value = v;
          rep.argmin = {r1, r2};
        }
      }
    }
    return rep;
  }
  if (id == IdentityId::CONTACT_VOLUME) {
    const auto profile = contact::make_profile(cfg.C0, cfg.C1, cfg.K, cfg.contact_eps);
    const Scalar coeff = quoted_contact_coefficient(cfg.n);
    const double lo = 1e-3, hi = 1 + cfg.contact_eps;
    for (int i = 0; i < resolution; ++i) {
      const double r = lo + (hi - lo) * i / (resolution - 1);
      const auto q = profile(r);
      exterior::Bindings b;
      b.bind(Atom::fc, q.f).bind(Atom::gc, q.g).bind(Atom::dfc, q.df).bind(Atom::dgc, q.dg);
      const double v = exterior::eval_numeric(coeff, b);
      if (v < rep.min_value) {
        rep.min_value = v;
        rep.argmin = {r};
      }
    }
    return rep;
  }
  throw ConfigError("positivity_grid: only TOP_POWER and CONTACT_VOLUME have a coefficient to grid");
}

}  // namespace lbf::models
