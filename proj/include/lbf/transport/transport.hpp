#pragma once

// Parallel transport for the fibration (mu(r1) r2 e^{i th2}, h) of the line-bundle
// model: trajectories, closed forms and the monodromy angle profile.

#include "lbf/core.hpp"
#include "lbf/models/config.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace lbf::transport {

using models::ModelConfig;
using models::Realizations;

/// Denominator of the transport field (see Design notes in the README).
enum class Denominator {
  corrected,  // mu'(r1) r2 h_r2 - mu(r1) h_r1: keeps mu r2 = s
  printed,    // r2 h_r2 - mu(r1) h_r1
};

struct IntegratorSettings {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double max_step = 1e-2;
  double initial_step = 1e-8;
  Denominator denominator = Denominator::corrected;
};

class SingularTransportError : public Error {
 public:
  using Error::Error;
};

class IntegrationError : public Error {
 public:
  using Error::Error;
};

struct TransportParams {
  ModelConfig cfg;
  Realizations real;
  IntegratorSettings ode;

  explicit TransportParams(const ModelConfig& c, IntegratorSettings settings = {})
      : cfg(c), real(c), ode(settings) {
    if (!(ode.abs_tol > 0 && ode.rel_tol > 0 && ode.max_step > 0 && ode.initial_step > 0)) {
      throw ConfigError("integrator tolerances and steps must be positive");
    }
    // mu(r) = r below eps, mu = 1 near delta, mu' >= 0
    constexpr int samples = 1000;
    for (int i = 0; i <= samples; ++i) {
      const double r = cfg.eps * i / samples;
      if (real.mu(r) != r) throw ConfigError("mu realization: mu(r) != r below eps");
      const double x = cfg.delta * i / samples;
      if (real.dmu(x) < 0) throw ConfigError("mu realization: mu' < 0");
    }
    if (real.mu(cfg.delta) != 1) throw ConfigError("mu realization: mu != 1 near delta");
  }

  /// h and its gradient at (r1, r2).
  struct HGrad {
    double h, h1, h2;
  };
  HGrad h_grad(double r1, double r2) const {
    const double rr = r1 * r1 + r2 * r2;
    const double f = real.u(rr), du = real.du(rr);
    const double r1s = r1 * r1, r2s = r2 * r2;
    return {-r1s + r2s - f * r1s * r2s, -2 * r1 - 2 * r1 * f * r2s - 2 * r1 * r1s * r2s * du,
            2 * r2 - 2 * r2 * f * r1s - 2 * r1s * r2 * r2s * du};
  }
  double h(double r1, double r2) const { return h_grad(r1, r2).h; }

  double denominator(double r1, double r2, Denominator which) const {
    const auto g = h_grad(r1, r2);
    const double lead = which == Denominator::corrected ? real.dmu(r1) : 1.0;
    return lead * r2 * g.h2 - real.mu(r1) * g.h1;
  }
};

struct TrajectorySample {
  double s, r1, r2, h_drift, mu_r2_minus_s;
};

struct Trajectory {
  double t = 0;
  Denominator denominator = Denominator::corrected;
  std::vector<TrajectorySample> samples;
  double max_h_drift = 0;
  double max_mu_drift = 0;

  const TrajectorySample& end() const { return samples.back(); }
};

inline std::array<double, 2> initial_point(double t) {
  if (t > 0) return {0.0, std::sqrt(t)};
  return {std::sqrt(-t), 0.0};
}

inline Trajectory integrate(const TransportParams& p, double t, double s_max) {
  const double lo = -p.cfg.delta * p.cfg.delta, hi = p.cfg.c * p.cfg.c;
  if (t == 0 || t < lo || t > hi) {
    std::ostringstream os;
    os << "integrate: t = " << t << " outside [" << lo << ", " << hi << "] \\ {0}";
    throw DomainError(os.str());
  }
  if (!(s_max >= 0 && s_max <= 1)) throw DomainError("integrate: s_max must lie in [0, 1]");

  using State = std::array<double, 2>;
  const Denominator which = p.ode.denominator;
  auto field = [&](const State& x, State& dxdt, double s) {
    const auto g = p.h_grad(x[0], x[1]);
    const double lead = which == Denominator::corrected ? p.real.dmu(x[0]) : 1.0;
    const double den = lead * x[1] * g.h2 - p.real.mu(x[0]) * g.h1;
    if (!(std::abs(den) >= 1e-12)) {
      std::ostringstream os;
      os.precision(17);
      os << "singular transport: |denominator| = " << std::abs(den) << " at s = " << s << ", r1 = " << x[0]
         << ", r2 = " << x[1] << " (t = " << t << ")";
      throw SingularTransportError(os.str());
    }
    dxdt[0] = g.h2 / den;
    dxdt[1] = -g.h1 / den;
  };

  Trajectory out;
  out.t = t;
  out.denominator = which;
  State x = initial_point(t);
  const double h0 = p.h(x[0], x[1]);
  auto record = [&](double s) {
    const double hd = std::abs(p.h(x[0], x[1]) - h0);
    const double md = std::abs(p.real.mu(x[0]) * x[1] - s);
    out.samples.push_back({s, x[0], x[1], hd, md});
    out.max_h_drift = std::max(out.max_h_drift, hd);
    out.max_mu_drift = std::max(out.max_mu_drift, md);
  };
  record(0);

  namespace odeint = boost::numeric::odeint;
  auto stepper = odeint::make_controlled(p.ode.abs_tol, p.ode.rel_tol, odeint::runge_kutta_dopri5<State>());
  double s = 0;
  double dt = std::min(p.ode.initial_step, s_max);
  while (s < s_max) {
    dt = std::min({dt, s_max - s, p.ode.max_step});
    const double before = s;
    const auto res = stepper.try_step(field, x, s, dt);
    if (res == odeint::success) {
      if (s_max - s < 1e-15 * std::max(1.0, s_max)) s = s_max;
      record(s);
    } else if (dt < 1e-16 * std::max(1.0, std::abs(before))) {
      std::ostringstream os;
      os << "integration failure: step size underflow at s = " << before << " (t = " << t << ")";
      throw IntegrationError(os.str());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

enum class Regime { small_t, outer_large_t };

inline const char* regime_name(Regime r) { return r == Regime::small_t ? "small_t" : "outer_large_t"; }

/// Closed-form transport endpoint (r1, r2) at (s, t). With a config the
/// regime's hypotheses are checked at the endpoint (both radii grow with s).
inline std::pair<double, double> closed_form(Regime regime, double s, double t, const ModelConfig* cfg = nullptr) {
  if (s < 0) throw DomainError("closed_form: s >= 0 required");
  if (t == 0) throw DomainError("closed_form: t != 0 required");
  double r1 = 0, r2 = 0;
  if (regime == Regime::small_t) {
    // u = 2s/|t| + sqrt(4s^2/t^2 + 1); for t > 0 the +/- branches are swapped
    // relative to the printed display so that (0, sqrt t) is the start.
    const double at = std::abs(t);
    const double u = 2 * s / at + std::sqrt(4 * s * s / (at * at) + 1);
    const double plus = (std::sqrt(u) + 1 / std::sqrt(u)) / 2 * std::sqrt(at);
    const double minus = (std::sqrt(u) - 1 / std::sqrt(u)) / 2 * std::sqrt(at);
    if (t > 0) {
      r1 = minus;
      r2 = plus;
    } else {
      r1 = plus;
      r2 = minus;
    }
    if (cfg) {
      if (r1 > cfg->eps) throw DomainError("closed_form small_t: needs mu = r1 (r1 <= eps) along the path");
      if (r1 * r1 + r2 * r2 > cfg->eps_prime) {
        throw DomainError("closed_form small_t: needs f = 0 (r1^2 + r2^2 <= eps') along the path");
      }
    }
  } else {
    if (t < 0) throw DomainError("closed_form outer_large_t: t > 0 required");
    const double s2 = s * s;
    const double delta = std::sqrt(t * t + 4 * s2 + 2 * t * s2 + s2 * s2);
    // delta - t - s^2 = 4 s^2 / (delta + t + s^2), without the cancellation
    const double gap = 4 * s2 / (delta + t + s2);
    r1 = std::sqrt(gap / 2);
    r2 = std::sqrt((t - s2 + delta) / (2 - gap));
    if (cfg) {
      if (t < cfg->eps_dprime) throw DomainError("closed_form outer_large_t: needs f = 1 (t >= eps'')");
      if (r1 > cfg->eps) throw DomainError("closed_form outer_large_t: needs mu = r1 (r1 <= eps) along the path");
    }
  }
  return {r1, r2};
}

/// Deterministic (s, t) pairs inside the default small-t regime.
inline std::vector<std::pair<double, double>> small_t_pairs(const ModelConfig& cfg, std::size_t count) {
  const double ts[] = {0.001, 0.002, 0.005, 0.01, 0.02, 0.05, -0.0002, -0.0005, -0.001, -0.0015, -0.002};
  const double ss[] = {1e-4, 2e-4, 5e-4, 1e-3, 1.5e-3};
  std::vector<std::pair<double, double>> out;
  for (double t : ts) {
    for (double s : ss) {
      try {
        closed_form(Regime::small_t, s, t, &cfg);
      } catch (const DomainError&) {
        continue;
      }
      if (out.size() < count) out.emplace_back(s, t);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

/// R~_s(t): -r2^2 + t for t > 0, -r2^2 - 1 for t < 0. For t > 0 the value is
/// taken on the level set h = t as -(r1^2 + f r1^2 r2^2), which avoids the
/// cancellation in -r2^2 + t.
inline double r_tilde(const TransportParams& p, double s0, double t) {
  const auto end = integrate(p, t, s0).end();
  if (t > 0) {
    const double f = p.real.u(end.r1 * end.r1 + end.r2 * end.r2);
    return -(end.r1 * end.r1 + f * end.r1 * end.r1 * end.r2 * end.r2);
  }
  return -end.r2 * end.r2 - 1;
}

struct ProfileSample {
  double t, R, dR, dR_cut;
};

struct MonodromyProfile {
  double s0 = 0;
  std::vector<ProfileSample> samples;
};

/// Finite-difference step for R~' at t: min(|t|/8, 1e-3).
inline double fd_step(double t) { return std::min(std::abs(t) / 8, 1e-3); }

inline ProfileSample profile_point(const TransportParams& p, double s0, double t) {
  const double lo = -p.cfg.delta * p.cfg.delta, hi = p.cfg.c * p.cfg.c;
  const double h = fd_step(t);
  const double R = r_tilde(p, s0, t);
  double dR = 0;
  if (t - h < lo) {
    dR = (r_tilde(p, s0, t + h) - R) / h;
  } else if (t + h > hi) {
    dR = (R - r_tilde(p, s0, t - h)) / h;
  } else {
    dR = (r_tilde(p, s0, t + h) - r_tilde(p, s0, t - h)) / (2 * h);
  }
  const double sig = p.real.sigma(t), dsig = p.real.dsigma(t);
  // ((1 - sigma) R)' = -sigma' R + (1 - sigma) R'
  const double cut = (sig == 1 && dsig == 0) ? 0.0 : -dsig * R + (1 - sig) * dR;
  return {t, R, dR, cut};
}

inline MonodromyProfile monodromy_profile(const TransportParams& p, double s0, const std::vector<double>& t_grid) {
  if (!(s0 > 0 && s0 <= p.cfg.eps / 4)) throw DomainError("monodromy_profile: s0 must lie in (0, eps/4]");
  MonodromyProfile out;
  out.s0 = s0;
  for (double t : t_grid) {
    if (t == 0) throw DomainError("monodromy_profile: grid must avoid t = 0");
    out.samples.push_back(profile_point(p, s0, t));
  }
  return out;
}

/// Two-point linear (Richardson) extrapolation of R~' to t -> 0 from the two
/// grid points on the requested side (+1 or -1) closest to 0.
inline double limit_at_zero(const MonodromyProfile& prof, int side) {
  const ProfileSample* a = nullptr;  // closest
  const ProfileSample* b = nullptr;  // next
  for (const auto& q : prof.samples) {
    if ((side > 0) != (q.t > 0)) continue;
    if (!a || std::abs(q.t) < std::abs(a->t)) {
      b = a;
      a = &q;
    } else if (!b || std::abs(q.t) < std::abs(b->t)) {
      b = &q;
    }
  }
  if (!a || !b) throw DomainError("limit_at_zero: need two grid points on that side");
  // linear model dR(t) = L + c t through both points
  return (a->dR * b->t - b->dR * a->t) / (b->t - a->t);
}

/// Grid {±1e-2} U {±1e-3 * 2^-k, k = 0..levels-1}, sorted ascending.
inline std::vector<double> limit_grid(int levels) {
  std::vector<double> g = {-1e-2, 1e-2};
  for (int k = 0; k < levels; ++k) {
    g.push_back(1e-3 * std::ldexp(1.0, -k));
    g.push_back(-1e-3 * std::ldexp(1.0, -k));
  }
  std::sort(g.begin(), g.end());
  return g;
}

// ---------------------------------------------------------------------------

inline std::string trajectory_csv(const Trajectory& tr) {
  std::ostringstream os;
  os.precision(15);
  os << "s,r1,r2,h_drift,mu_r2_minus_s\n";
  for (const auto& q : tr.samples) {
    os << q.s << ',' << q.r1 << ',' << q.r2 << ',' << q.h_drift << ',' << q.mu_r2_minus_s << '\n';
  }
  return os.str();
}

inline std::string profile_csv(const MonodromyProfile& prof) {
  std::ostringstream os;
  os.precision(15);
  os << "t,R,dR,dR_cut\n";
  for (const auto& q : prof.samples) os << q.t << ',' << q.R << ',' << q.dR << ',' << q.dR_cut << '\n';
  return os.str();
}

}  // namespace lbf::transport
