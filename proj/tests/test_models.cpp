#include "lbf/models/identities.hpp"

#include <gtest/gtest.h>

#include <chrono>

using namespace lbf;
using namespace lbf::models;
using exterior::equals;
using exterior::ext_d;

namespace {

ModelConfig cfg_n(int n) { return ModelConfig::with_n(n); }

}  // namespace

TEST(ModelConfig, OrderingEnforced) {
  ModelConfig c;
  EXPECT_NO_THROW(c.validate());
  c.eps_prime = 0.03;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.delta = 0.04;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.c = 0;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Realizations, PlateausAndValues) {
  Realizations r(ModelConfig{});
  EXPECT_EQ(r.u(0.05), 0);
  EXPECT_EQ(r.u(0.4), 1);  // 2 eps''
  EXPECT_EQ(r.mu(0.03), 0.03);
  EXPECT_EQ(r.dmu(0.03), 1);
  EXPECT_EQ(r.mu(0.48), 1);
  EXPECT_EQ(r.dmu(0.48), 0);
  EXPECT_EQ(r.sigma(10), 0);
  EXPECT_EQ(r.sigma(95), 1);
  for (int i = 0; i <= 1000; ++i) EXPECT_GE(r.dmu(0.5 * i / 1000), 0);
}

TEST(Realizations, DerivativesMatchFiniteDifferences) {
  Realizations r(ModelConfig{});
  const double h = 1e-6;
  for (double s : {0.12, 0.15, 0.19}) {
    EXPECT_NEAR(r.du(s), (r.u(s + h) - r.u(s - h)) / (2 * h), 1e-5);
    EXPECT_NEAR(r.ddu(s), (r.du(s + h) - r.du(s - h)) / (2 * h), 1e-3);
  }
  for (double x : {0.1, 0.25, 0.4}) {
    EXPECT_NEAR(r.dmu(x), (r.mu(x + h) - r.mu(x - h)) / (2 * h), 1e-6);
    EXPECT_NEAR(r.ddmu(x), (r.dmu(x + h) - r.dmu(x - h)) / (2 * h), 1e-4);
  }
  for (double t : {65.0, 75.0, 85.0}) EXPECT_NEAR(r.dsigma(t), (r.sigma(t + 1e-4) - r.sigma(t - 1e-4)) / 2e-4, 1e-7);
}

TEST(BuildForm, H) {
  Form h = build_form("h", cfg_n(2));
  EXPECT_EQ(h.str(), "(r2^2 - r1^2 - r1^2*r2^2*f) * 1");
}

TEST(BuildForm, LambdaBar) {
  ModelForms m(2);
  const auto& a = m.boothby_wang();
  Form expected = (Form::gen(a, "alpha") - Form::gen(a, "dth")) - (var(Atom::r, 2) * Form::gen(a, "alpha")) +
                  (var(Atom::r, 2) * Form::gen(a, "dth"));
  EXPECT_TRUE(equals(build_form("lambda_bar", cfg_n(2)), expected));
}

TEST(BuildForm, Beta) {
  Form b = build_form("beta", cfg_n(3));
  EXPECT_EQ(b.str(), "(gc) * dphi + (fc) * lambda");
}

TEST(BuildForm, UnknownName) { EXPECT_THROW(build_form("omega7", cfg_n(2)), ConfigError); }

TEST(BuildForm, Omega1IsDLambdaNu) {
  for (int n = 2; n <= 5; ++n) {
    auto cfg = cfg_n(n);
    EXPECT_TRUE(equals(ext_d(build_form("lambda_nu", cfg)), build_form("omega1_tilde", cfg)));
  }
}

TEST(BuildForm, ClosedForms) {
  for (int n = 2; n <= 5; ++n) {
    auto cfg = cfg_n(n);
    EXPECT_TRUE(ext_d(build_form("omega1_tilde", cfg)).is_zero());
    EXPECT_TRUE(ext_d(build_form("omega0", cfg)).is_zero());
    EXPECT_TRUE(ext_d(build_form("omega_bar", cfg)).is_zero());
    EXPECT_TRUE(ext_d(build_form("omega_alpha", cfg)).is_zero());
  }
}

TEST(BuildForm, Omega1MatchesOmega0WhereFIsOne) {
  // Outside the neighbourhood the two forms agree: f = 1 and u' = 0 there.
  auto cfg = cfg_n(3);
  Form w1 = build_form("omega1_tilde", cfg).substitute(Atom::du, 0).substitute(Atom::f, 1);
  EXPECT_TRUE(equals(w1, build_form("omega0", cfg)));
}

TEST(BuildForm, Omega1AtFZeroDiffersByExactTerm) {
  // f = 0, u' = 0 recovers d((1 + r2^2)(dth2 + alpha) + r1^2 (dth1 - alpha)),
  // which differs from Omega0 by d(r1^2 r2^2 (dth1 - alpha)).
  auto cfg = cfg_n(3);
  ModelForms m(3);
  Form w1 = build_form("omega1_tilde", cfg).substitute(Atom::du, 0).substitute(Atom::f, 0);
  Form gap = ext_d(var(Atom::r1, 2) * var(Atom::r2, 2) * m.theta1_minus_alpha());
  EXPECT_TRUE(equals(build_form("omega0", cfg) - w1, gap));
  EXPECT_FALSE(gap.is_zero());
}

TEST(Identities, AllExactForNTwoToFive) {
  const auto start = std::chrono::steady_clock::now();
  for (int n = 2; n <= 5; ++n) {
    for (auto id : kAllIdentities) {
      auto rep = verify_identity(id, cfg_n(n));
      EXPECT_TRUE(rep.exact) << identity_name(id) << " n=" << n << " residual " << rep.residual_text;
      EXPECT_EQ(rep.residual_text, "0");
    }
  }
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 30.0);
}

TEST(Identities, TopPowerCoefficientN2) {
  auto rep = verify_identity(IdentityId::TOP_POWER, cfg_n(2));
  ASSERT_TRUE(rep.exact);
  // 6(1 - r1^2 + r2^2(1 - f r1^2))(r1^2 r2^2 u' + f r2^2 + 1), built independently
  const Scalar r1s = var(Atom::r1, 2), r2s = var(Atom::r2, 2), f = var(Atom::f);
  const Scalar expected = 6 * (1 - r1s + r2s - f * r1s * r2s) * (r1s * r2s * var(Atom::du) + f * r2s + 1);
  EXPECT_EQ(rep.coefficient_text, expected.str());
}

TEST(Identities, TopPowerCoefficientAtOrigin) {
  exterior::Bindings b;
  b.bind(Atom::r1, 0).bind(Atom::r2, 0).bind(Atom::f, 0).bind(Atom::du, 0);
  EXPECT_DOUBLE_EQ(exterior::eval_numeric(quoted_top_power_coefficient(2), b), 6);
}

TEST(Identities, ContactVolumeCoefficient) {
  for (int n = 1; n <= 5; ++n) {
    auto rep = verify_identity(IdentityId::CONTACT_VOLUME, cfg_n(n));
    EXPECT_TRUE(rep.exact) << n << ": " << rep.residual_text;
    EXPECT_EQ(rep.coefficient_text, quoted_contact_coefficient(n).str());
  }
}

TEST(Identities, HessianDeterminant) {
  auto rep = verify_identity(IdentityId::HESSIAN, ModelConfig{});
  EXPECT_TRUE(rep.exact);
  EXPECT_EQ(rep.coefficient_text, "[[0,1],[1,0]] det -1");
}

TEST(Identities, MoserDiffAgainstHandExpansion) {
  // d((1-f) r1^2 r2^2 (dth1 - alpha)) expanded by hand:
  // [-u'(2 r1 dr1 + 2 r2 dr2) r1^2 r2^2 + (1-f)(2 r1 r2^2 dr1 + 2 r1^2 r2 dr2)] ^ (dth1 - alpha)
  //   - (1-f) r1^2 r2^2 dalpha
  ModelForms m(3);
  const auto& a = m.line_bundle();
  const Scalar r1 = var(Atom::r1), r2 = var(Atom::r2), f = var(Atom::f), du = var(Atom::du);
  Form dr1 = Form::gen(a, "dr1"), dr2 = Form::gen(a, "dr2");
  Form one_form = (-2 * du * r1.pow(3) * r2.pow(2) + 2 * (1 - f) * r1 * r2.pow(2)) * dr1 +
                  (-2 * du * r1.pow(2) * r2.pow(3) + 2 * (1 - f) * r1.pow(2) * r2) * dr2;
  Form oracle = (one_form ^ m.theta1_minus_alpha()) - ((1 - f) * r1.pow(2) * r2.pow(2)) * Form::gen(a, "dalpha");
  EXPECT_TRUE(equals(m.omega0() - m.omega1_tilde(), oracle));
  EXPECT_TRUE(verify_identity(IdentityId::MOSER_DIFF, cfg_n(3)).exact);
}

TEST(Identities, ResidualIsReportedVerbatim) {
  // a deliberately wrong kernel vector leaves a non-zero residual
  ModelForms m(2);
  const auto& a = m.boothby_wang();
  auto v = TangentSymbol::basis(a, "R_alpha") + TangentSymbol::basis(a, "d/dth");
  Form res = exterior::interior(v, m.omega_alpha());
  EXPECT_FALSE(res.is_zero());
  EXPECT_NE(res.str().find("dr"), std::string::npos);
}

TEST(Identities, NamesRoundTrip) {
  for (auto id : kAllIdentities) EXPECT_EQ(identity_from_name(identity_name(id)), id);
  EXPECT_FALSE(identity_from_name("NOPE"));
}

TEST(Positivity, TopPowerGrid) {
  auto rep = positivity_grid(IdentityId::TOP_POWER, cfg_n(2), 200);
  EXPECT_GT(rep.min_value, 0);
  ASSERT_EQ(rep.argmin.size(), 2u);
  EXPECT_LE(rep.argmin[0], 0.45 + 1e-12);
  EXPECT_LE(rep.argmin[1], 10 + 1e-12);
}

TEST(Positivity, ContactGridEveryN) {
  for (int n = 1; n <= 6; ++n) {
    auto rep = positivity_grid(IdentityId::CONTACT_VOLUME, cfg_n(n), 2000);
    EXPECT_GT(rep.min_value, 0) << n;
  }
}

TEST(Positivity, ContactNearZeroMatchesClosedForm) {
  auto cfg = cfg_n(3);
  auto p = contact::make_profile(cfg.C0, cfg.C1, cfg.K, cfg.contact_eps);
  const double r = 1e-3;
  const auto q = p(r);
  exterior::Bindings b;
  b.bind(Atom::fc, q.f).bind(Atom::gc, q.g).bind(Atom::dfc, q.df).bind(Atom::dgc, q.dg);
  // n C0^{n-1} * 2 C0 C1 r
  EXPECT_NEAR(exterior::eval_numeric(quoted_contact_coefficient(3), b), 3 * 4 * 2 * 2 * 1 * r, 1e-12);
}

TEST(Positivity, OnlyGriddedIdentities) {
  EXPECT_THROW(positivity_grid(IdentityId::HESSIAN, ModelConfig{}, 10), ConfigError);
}
