#pragma once

// The model forms: the line-bundle model (P, r1, th1, r2, th2), the
// Boothby-Wang disk bundle (P, r, th) and the open-book collar (dV, r, phi).

#include "lbf/exterior/form.hpp"
#include "lbf/models/config.hpp"

#include <map>
#include <mutex>
#include <string>
#include <vector>

namespace lbf::models {

using exterior::AlgebraPtr;
using exterior::Atom;
using exterior::Form;
using exterior::Scalar;
using exterior::TangentSymbol;
using exterior::var;

enum class Family { line_bundle, boothby_wang, open_book };

namespace detail {

inline std::vector<exterior::Generator> generators(Family fam) {
  switch (fam) {
    case Family::line_bundle:
      return {{"dr1", 1, false, Atom::r1, "", "d/dr1"},
              {"dth1", 1, false, Atom::theta1, "", "d/dth1"},
              {"dr2", 1, false, Atom::r2, "", "d/dr2"},
              {"dth2", 1, false, Atom::theta2, "", "d/dth2"},
              {"alpha", 1, true, std::nullopt, "dalpha", "R_alpha"},
              {"dalpha", 2, true, std::nullopt, "", ""}};
    case Family::boothby_wang:
      return {{"dr", 1, false, Atom::r, "", "d/dr"},
              {"dth", 1, false, Atom::theta, "", "d/dth"},
              {"alpha", 1, true, std::nullopt, "dalpha", "R_alpha"},
              {"dalpha", 2, true, std::nullopt, "", ""}};
    case Family::open_book:
      return {{"dr", 1, false, Atom::r, "", "d/dr"},
              {"dphi", 1, false, Atom::phi, "", "d/dphi"},
              {"lambda", 1, true, std::nullopt, "dlambda", "R_lambda"},
              {"dlambda", 2, true, std::nullopt, "", ""}};
  }
  throw ConfigError("unknown algebra family");
}

inline const char* family_name(Family fam) {
  switch (fam) {
    case Family::line_bundle: return "line-bundle";
    case Family::boothby_wang: return "boothby-wang";
    case Family::open_book: return "open-book";
  }
  return "?";
}

}  // namespace detail

/// One shared algebra instance per (family, n); forms built for the same n
/// can be combined.
inline AlgebraPtr model_algebra(Family fam, int n) {
  static std::mutex mu;
  static std::map<std::pair<Family, int>, AlgebraPtr> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{fam, n}];
  if (!slot) slot = exterior::make_algebra(detail::family_name(fam), n, detail::generators(fam));
  return slot;
}

/// Builds model forms over the algebras for cfg.n.
class ModelForms {
 public:
  explicit ModelForms(int n)
      : lb_(model_algebra(Family::line_bundle, n)),
        bw_(model_algebra(Family::boothby_wang, n)),
        ob_(model_algebra(Family::open_book, n)) {}

  const AlgebraPtr& line_bundle() const { return lb_; }
  const AlgebraPtr& boothby_wang() const { return bw_; }
  const AlgebraPtr& open_book() const { return ob_; }

  Form g(const AlgebraPtr& a, std::string_view name) const { return Form::gen(a, name); }
  Form s(const AlgebraPtr& a, const Scalar& c) const { return Form::scalar(a, c); }

  static Scalar r1() { return var(Atom::r1); }
  static Scalar r2() { return var(Atom::r2); }
  static Scalar f() { return var(Atom::f); }

  /// r1^2 + f r1^2 r2^2, the coefficient of (dth1 - alpha) in lambda_nu.
  static Scalar b_coefficient() { return var(Atom::r1, 2) + f() * var(Atom::r1, 2) * var(Atom::r2, 2); }

  // line-bundle model
  Form theta1_minus_alpha() const { return g(lb_, "dth1") - g(lb_, "alpha"); }
  Form theta2_plus_alpha() const { return g(lb_, "dth2") + g(lb_, "alpha"); }

  /// -r1^2 + r2^2 - f r1^2 r2^2
  Scalar h() const { return -var(Atom::r1, 2) + var(Atom::r2, 2) - f() * var(Atom::r1, 2) * var(Atom::r2, 2); }

  /// (1 + r2^2)(dth2 + alpha) + (r1^2 + f r1^2 r2^2)(dth1 - alpha)
  Form lambda_nu() const {
    return (1 + var(Atom::r2, 2)) * theta2_plus_alpha() + b_coefficient() * theta1_minus_alpha();
  }

  /// d((1 + r2^2)(dth2 + alpha)) + d((1 + f r2^2) r1^2 (dth1 - alpha))
  Form omega1_tilde() const {
    return exterior::ext_d((1 + var(Atom::r2, 2)) * theta2_plus_alpha()) +
           exterior::ext_d((1 + f() * var(Atom::r2, 2)) * var(Atom::r1, 2) * theta1_minus_alpha());
  }

  /// d((1 + r2^2)(alpha_nu + dth2)), alpha_nu = (1 - r1^2) alpha + r1^2 dth1
  Form omega0() const {
    Form alpha_nu = (1 - var(Atom::r1, 2)) * g(lb_, "alpha") + var(Atom::r1, 2) * g(lb_, "dth1");
    return exterior::ext_d((1 + var(Atom::r2, 2)) * (alpha_nu + g(lb_, "dth2")));
  }

  // Boothby-Wang disk bundle
  /// (1 - r^2)(alpha - dth)
  Form lambda_bar() const { return (1 - var(Atom::r, 2)) * (g(bw_, "alpha") - g(bw_, "dth")); }
  Form omega_bar() const { return exterior::ext_d(lambda_bar()); }
  /// d((1 + r^2)(alpha + dth))
  Form omega_alpha() const { return exterior::ext_d((1 + var(Atom::r, 2)) * (g(bw_, "alpha") + g(bw_, "dth"))); }
  /// -((1 - r^2) / 2r) d/dr
  TangentSymbol liouville_bar() const {
    Scalar coeff = Scalar::frac(-1, 2) * var(Atom::r, -1) + Scalar::frac(1, 2) * var(Atom::r);
    return coeff * TangentSymbol::basis(bw_, "d/dr");
  }

  // open-book collar
  /// f(r) lambda + g(r) dphi
  Form beta() const { return (var(Atom::fc) * g(ob_, "lambda")) + (var(Atom::gc) * g(ob_, "dphi")); }

 private:
  AlgebraPtr lb_, bw_, ob_;
};

inline const std::vector<std::string>& form_names() {
  static const std::vector<std::string> names = {"omega0",    "omega1_tilde", "lambda_bar", "omega_bar",
                                                 "omega_alpha", "lambda_nu",  "h",          "beta"};
  return names;
}

inline Form build_form(const std::string& name, const ModelConfig& cfg) {
  cfg.validate();
  ModelForms m(cfg.n);
  if (name == "omega0") return m.omega0();
  if (name == "omega1_tilde") return m.omega1_tilde();
  if (name == "lambda_bar") return m.lambda_bar();
  if (name == "omega_bar") return m.omega_bar();
  if (name == "omega_alpha") return m.omega_alpha();
  if (name == "lambda_nu") return m.lambda_nu();
  if (name == "h") return Form::scalar(m.line_bundle(), m.h());
  if (name == "beta") return m.beta();
  throw ConfigError("unknown model form '" + name + "'");
}

}  // namespace lbf::models
