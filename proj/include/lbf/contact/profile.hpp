#pragma once

// Profile curves for the open-book contact form beta = f(r) lambda + g(r) dphi,
// the corner-smoothing curve and the base profile h(s).

#include "lbf/core.hpp"
#include "lbf/models/config.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace lbf::contact {

using models::Smoothstep;

/// A point of a planar profile r -> (f, g) with first derivatives.
struct ProfilePoint {
  double f = 0, g = 0, df = 0, dg = 0;
  /// f g' - f' g, the nonparallel determinant.
  double det() const { return f * dg - df * g; }
};

/// The (f, g) profile. On (eps/2, 1) the curve is a blend in polar
/// coordinates of the (f, g)-plane: since f g' - f' g = rho^2 theta', the
/// determinant stays positive as long as the polar angle is increasing.
class ContactProfile {
 public:
  using Fn = std::function<ProfilePoint(double)>;

  /// A profile given by an arbitrary callable (used for degenerate examples).
  ContactProfile(Fn fn, double r_max) : fn_(std::move(fn)), r_max_(r_max) {}

  ProfilePoint operator()(double r) const { return fn_(r); }
  double r_max() const { return r_max_; }

 private:
  Fn fn_;
  double r_max_;
};

namespace detail {

struct Polar {
  double angle, d_angle, radius, d_radius;
};

inline Polar to_polar(double f, double g, double df, double dg) {
  const double rho2 = f * f + g * g;
  const double rho = std::sqrt(rho2);
  return {std::atan2(g, f), (f * dg - df * g) / rho2, rho, (f * df + g * dg) / rho};
}

}  // namespace detail

inline ContactProfile make_profile(double C0, double C1, double K, double eps) {
  if (!(C0 > 1)) throw ConfigError("make_profile: C0 > 1 required");
  if (!(C1 > 0)) throw ConfigError("make_profile: C1 > 0 required");
  if (!(K > 0)) throw ConfigError("make_profile: K > 0 required");
  if (!(eps > 0 && eps < 0.5)) throw ConfigError("make_profile: 0 < eps < 1/2 required");

  const double left = eps / 2, right = 1.0;
  auto inner = [=](double r) { return ProfilePoint{C0, C1 * r * r, 0, 2 * C1 * r}; };
  auto outer = [=](double r) {
    const double e = std::exp(1 - r);
    return ProfilePoint{e, K, -e, 0};
  };

  auto fn = [=](double r) -> ProfilePoint {
    if (r <= left) return inner(r);
    if (r >= right) return outer(r);
    const double width = right - left;
    const double x = (r - left) / width;
    const double w = Smoothstep::value(x), dw = Smoothstep::d1(x) / width;
    const ProfilePoint a = inner(r), b = outer(r);
    const auto pa = detail::to_polar(a.f, a.g, a.df, a.dg);
    const auto pb = detail::to_polar(b.f, b.g, b.df, b.dg);
    const double th = (1 - w) * pa.angle + w * pb.angle;
    const double dth = (1 - w) * pa.d_angle + w * pb.d_angle + dw * (pb.angle - pa.angle);
    const double rho = (1 - w) * pa.radius + w * pb.radius;
    const double drho = (1 - w) * pa.d_radius + w * pb.d_radius + dw * (pb.radius - pa.radius);
    const double c = std::cos(th), s = std::sin(th);
    return {rho * c, rho * s, drho * c - rho * s * dth, drho * s + rho * c * dth};
  };

  // The blend is monotone in angle iff the right-hand branch never lies
  // below the left-hand one; reject parameter sets where it would.
  constexpr int samples = 2000;
  for (int i = 0; i <= samples; ++i) {
    const double r = left + (right - left) * i / samples;
    const ProfilePoint a = inner(r), b = outer(r);
    if (std::atan2(b.g, b.f) < std::atan2(a.g, a.f)) {
      std::ostringstream os;
      os << "make_profile: polar blend not monotone at r = " << r << " (increase K or decrease C1/C0)";
      throw ConfigError(os.str());
    }
  }
  return ContactProfile(fn, 1 + eps);
}

struct GridMinimum {
  double min_value = 0;
  double argmin = 0;
  bool positive() const { return min_value > 0; }
};

/// Minimum of f^{n-1}(f g' - f' g) over r_i = r_max * i / grid, i = 1..grid.
inline GridMinimum verify_profile(const ContactProfile& p, int n, int grid) {
  if (grid < 1) throw ConfigError("verify_profile: grid >= 1 required");
  GridMinimum out{INFINITY, 0};
  for (int i = 1; i <= grid; ++i) {
    const double r = p.r_max() * i / grid;
    const ProfilePoint q = p(r);
    const double v = std::pow(q.f, n - 1) * q.det();
    if (v < out.min_value) out = {v, r};
  }
  return out;
}

/// CSV rows r,f,g,determinant.
inline std::string profile_csv(const ContactProfile& p, int grid) {
  std::ostringstream os;
  os.precision(12);
  os << "r,f,g,determinant\n";
  for (int i = 0; i <= grid; ++i) {
    const double r = p.r_max() * i / grid;
    const ProfilePoint q = p(r);
    os << r << ',' << q.f << ',' << q.g << ',' << q.det() << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------

/// C^1 corner-rounding curve on [-eps, eps]: (eps, 1 + r) up to -eps/2, a
/// cubic Hermite piece on (-eps/2, 0), then (-r, 1).
class CornerCurve {
 public:
  explicit CornerCurve(double eps) : eps_(eps) {
    if (!(eps > 0 && eps < 0.5)) throw ConfigError("corner curve: 0 < eps < 1/2 required");
  }

  double eps() const { return eps_; }

  ProfilePoint operator()(double r) const {
    const double h = eps_ / 2;
    if (r <= -h) return {eps_, 1 + r, 0, 1};
    if (r >= 0) return {-r, 1, -1, 0};
    const double x = (r + h) / h;
    return {eps_ * (1.5 * x * x * x - 2.5 * x * x + 1), 1 - h + h * (-x * x * x + x * x + x),
            eps_ * (4.5 * x * x - 5 * x) / h, (-3 * x * x + 2 * x + 1)};
  }

  struct Report {
    bool start_ok = false;        // (eps, 1 - eps) at r = -eps
    bool end_ok = false;          // (-eps, 1) at r = eps
    bool middle_signs_ok = false;  // f' < 0 < g' on (-eps/2, 0)
    bool monotone_ok = false;      // f non-increasing, g non-decreasing everywhere
    bool c1_ok = false;            // one-sided derivatives agree at the joins
    int samples = 0;
    bool ok() const { return start_ok && end_ok && middle_signs_ok && monotone_ok && c1_ok; }
  };

  Report verify(int samples = 2000) const {
    Report rep;
    rep.samples = samples;
    const ProfilePoint a = (*this)(-eps_), b = (*this)(eps_);
    rep.start_ok = a.f == eps_ && a.g == 1 - eps_;
    rep.end_ok = b.f == -eps_ && b.g == 1;

    rep.middle_signs_ok = true;
    const double h = eps_ / 2;
    for (int i = 1; i < samples; ++i) {
      const ProfilePoint q = (*this)(-h + h * i / samples);
      if (!(q.df < 0 && q.dg > 0)) rep.middle_signs_ok = false;
    }
    rep.monotone_ok = true;
    ProfilePoint prev = a;
    for (int i = 1; i <= samples; ++i) {
      const ProfilePoint q = (*this)(-eps_ + 2 * eps_ * i / samples);
      if (q.f > prev.f || q.g < prev.g || q.df > 0 || q.dg < 0) rep.monotone_ok = false;
      prev = q;
    }
    // derivative continuity: compare the Hermite endpoint values to the straight pieces
    const double tiny = 1e-12;
    const ProfilePoint l_in = (*this)(-h + tiny * h), r_in = (*this)(-tiny * h);
    rep.c1_ok = std::abs(l_in.df - 0) < 1e-9 && std::abs(l_in.dg - 1) < 1e-9 && std::abs(r_in.df + 1) < 1e-9 &&
                std::abs(r_in.dg) < 1e-9;
    return rep;
  }

 private:
  double eps_;
};

// ---------------------------------------------------------------------------

/// Base profile h(s): K s^2 on [0, eps], K e^{s-1} on [1 - eps, 1], blended in
/// between. e^{s-1} >= s^2 on [0, 1] keeps the blend increasing.
class BaseProfile {
 public:
  BaseProfile(double K, double eps) : K_(K), eps_(eps) {
    if (!(K > 0)) throw ConfigError("base profile: K > 0 required");
    if (!(eps > 0 && eps < 0.5)) throw ConfigError("base profile: 0 < eps < 1/2 required");
  }

  /// Mapping-cylinder constant near the boundary.
  static constexpr double H = 2 * std::numbers::pi;

  double value(double s) const {
    if (s <= eps_) return K_ * s * s;
    if (s >= 1 - eps_) return K_ * std::exp(s - 1);
    const double w = Smoothstep::value(arg(s));
    return (1 - w) * K_ * s * s + w * K_ * std::exp(s - 1);
  }

  double derivative(double s) const {
    if (s <= eps_) return 2 * K_ * s;
    if (s >= 1 - eps_) return K_ * std::exp(s - 1);
    const double w = Smoothstep::value(arg(s));
    const double dw = Smoothstep::d1(arg(s)) / (1 - 2 * eps_);
    return (1 - w) * 2 * K_ * s + w * K_ * std::exp(s - 1) + dw * K_ * (std::exp(s - 1) - s * s);
  }

  double K() const { return K_; }
  double eps() const { return eps_; }

 private:
  double arg(double s) const { return (s - eps_) / (1 - 2 * eps_); }
  double K_, eps_;
};

}  // namespace lbf::contact
