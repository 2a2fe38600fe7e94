#pragma once

#include "lbf/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lbf::models {

/// Radii and constants of the line-bundle model. Only inequalities are
/// imposed by the construction; the defaults make reports reproducible.
struct ModelConfig {
  int n = 2;                  // fiber-dimension index
  double delta = 0.5;         // disk radius in the base direction
  double eps = 0.05;          // mu(r) = r below eps
  double eps_prime = 0.1;     // u = 0 below eps'
  double eps_dprime = 0.2;    // u = 1 above eps''
  double c = 10.0;            // transport ceiling, h <= c^2
  double K = 1.0;             // contact / base-profile constant
  double C0 = 2.0;
  double C1 = 1.0;
  double contact_eps = 0.1;   // collar width of the contact profile

  void validate() const {
    auto fail = [](const std::string& what) { throw ConfigError("invalid model config: " + what); };
    if (n < 1) fail("n >= 1 required");
    if (!(0 < eps && eps < eps_prime && eps_prime < eps_dprime && eps_dprime < 1)) {
      fail("0 < eps < eps' < eps'' < 1 violated");
    }
    if (!(eps < delta && delta < 1)) fail("eps < delta < 1 violated");
    if (!(c > 0)) fail("c > 0 required");
    if (!(K > 0)) fail("K > 0 required");
    if (!(C0 > 1)) fail("C0 > 1 required");
    if (!(C1 > 0)) fail("C1 > 0 required");
    if (!(0 < contact_eps && contact_eps < 0.5)) fail("0 < contact_eps < 1/2 required");
  }

  static ModelConfig with_n(int n) {
    ModelConfig cfg;
    cfg.n = n;
    cfg.validate();
    return cfg;
  }
};

/// Quintic smoothstep 6x^5 - 15x^4 + 10x^3 clamped to [0, 1], with derivatives.
struct Smoothstep {
  static double value(double x) {
    if (x <= 0) return 0;
    if (x >= 1) return 1;
    return x * x * x * (x * (6 * x - 15) + 10);
  }
  static double d1(double x) {
    if (x <= 0 || x >= 1) return 0;
    return 30 * x * x * (x - 1) * (x - 1);
  }
  static double d2(double x) {
    if (x <= 0 || x >= 1) return 0;
    return 60 * x * (x - 1) * (2 * x - 1);
  }
};

/// Concrete C^2 realizations of the cutoff functions u, mu and sigma.
class Realizations {
 public:
  explicit Realizations(const ModelConfig& cfg) : cfg_(cfg) { cfg.validate(); }

  // u(s) = S((s - eps') / (eps'' - eps'))
  double u(double s) const { return Smoothstep::value((s - cfg_.eps_prime) / u_width()); }
  double du(double s) const { return Smoothstep::d1((s - cfg_.eps_prime) / u_width()) / u_width(); }
  double ddu(double s) const {
    return Smoothstep::d2((s - cfg_.eps_prime) / u_width()) / (u_width() * u_width());
  }

  // mu(r) = (1 - w) r + w with w = S((r - eps) / (delta - eps/2 - eps))
  double mu(double r) const {
    const double w = Smoothstep::value(mu_arg(r));
    return (1 - w) * r + w;
  }
  double dmu(double r) const {
    const double w = Smoothstep::value(mu_arg(r));
    const double dw = Smoothstep::d1(mu_arg(r)) / mu_width();
    return (1 - w) + dw * (1 - r);
  }
  double ddmu(double r) const {
    const double dw = Smoothstep::d1(mu_arg(r)) / mu_width();
    const double ddw = Smoothstep::d2(mu_arg(r)) / (mu_width() * mu_width());
    return -2 * dw + ddw * (1 - r);
  }
  /// First radius where mu is identically 1.
  double mu_plateau() const { return cfg_.delta - cfg_.eps / 2; }

  // sigma(t) = S((t - 0.6 c^2) / (0.3 c^2))
  double sigma(double t) const { return Smoothstep::value((t - 0.6 * c2()) / (0.3 * c2())); }
  double dsigma(double t) const { return Smoothstep::d1((t - 0.6 * c2()) / (0.3 * c2())) / (0.3 * c2()); }
  /// First t where sigma is identically 1.
  double sigma_plateau() const { return 0.9 * c2(); }

  const ModelConfig& config() const { return cfg_; }

 private:
  double u_width() const { return cfg_.eps_dprime - cfg_.eps_prime; }
  double mu_width() const { return mu_plateau() - cfg_.eps; }
  double mu_arg(double r) const { return (r - cfg_.eps) / mu_width(); }
  double c2() const { return cfg_.c * cfg_.c; }

  ModelConfig cfg_;
};

}  // namespace lbf::models
