#pragma once

// Euler characteristics of the pieces of the Lefschetz-Bott fillings and of
// their fiber sums.

#include "lbf/core.hpp"

#include <set>
#include <string>
#include <variant>
#include <vector>

namespace lbf::topo {

struct Sphere { int n; };
struct Quadric { int n; };
struct DiskBundleOverQuadric { int n; };
struct Disk { int dim; };
struct DiskCotangentSphere { int n; };
struct Custom {
  std::string name;
  long chi;
};

using SpaceDescriptor = std::variant<Sphere, Quadric, DiskBundleOverQuadric, Disk, DiskCotangentSphere, Custom>;

/// betti: from the Betti numbers of a smooth complex quadric.
/// printed: ((-1)^{n+1} - 1)/2 + n + 1.
enum class QuadricConvention { betti, printed };

inline long sign_pow(int n) { return n % 2 == 0 ? 1 : -1; }

inline long chi_quadric(int n, QuadricConvention conv = QuadricConvention::betti) {
  if (n < 0) throw DomainError("quadric: n >= 0 required");
  if (conv == QuadricConvention::printed) return (sign_pow(n + 1) - 1) / 2 + n + 1;
  // one class in each even degree 0..2n, plus the extra middle class for even n
  return n + 1 + (n % 2 == 0 ? 1 : 0);
}

inline long chi_space(const SpaceDescriptor& s, QuadricConvention conv = QuadricConvention::betti) {
  struct Visitor {
    QuadricConvention conv;
    long operator()(const Sphere& x) const { return 1 + sign_pow(x.n); }
    long operator()(const Quadric& x) const { return chi_quadric(x.n, conv); }
    long operator()(const DiskBundleOverQuadric& x) const { return chi_quadric(x.n, conv); }
    long operator()(const Disk&) const { return 1; }
    long operator()(const DiskCotangentSphere& x) const { return 1 + sign_pow(x.n); }
    long operator()(const Custom& x) const { return x.chi; }
  };
  return std::visit(Visitor{conv}, s);
}

/// chi(E1 #_F E2 #_F ...) = sum chi_i - (count - 1) chi_F.
inline long chi_fiber_sum(const std::vector<long>& parts, long chi_fiber) {
  if (parts.empty()) throw ConfigError("chi_fiber_sum: parts must be non-empty");
  long total = 0;
  for (long c : parts) total += c;
  return total - static_cast<long>(parts.size() - 1) * chi_fiber;
}

/// l copies of the disk bundle over Q^n and k + 1 - 2l disks, fiber DT*S^n.
inline long chi_filling(int n, int k, int l, QuadricConvention conv = QuadricConvention::betti) {
  if (l < 0 || 2 * l > k + 1) throw DomainError("chi_filling: 0 <= 2l <= k + 1 required");
  std::vector<long> parts(static_cast<std::size_t>(l), chi_space(DiskBundleOverQuadric{n}, conv));
  parts.insert(parts.end(), static_cast<std::size_t>(k + 1 - 2 * l), chi_space(Disk{2 * n + 2}));
  return chi_fiber_sum(parts, chi_space(DiskCotangentSphere{n}));
}

/// The printed chi(X_l) line, with the printed quadric value attached to the
/// k + 1 - 2l pieces and 1 to the l pieces:
/// l + (k + 1 - 2l) chi_Q' - (k - l) chi(S^n).
inline long chi_filling_printed(int n, int k, int l) {
  if (l < 0 || 2 * l > k + 1) throw DomainError("chi_filling: 0 <= 2l <= k + 1 required");
  const long q = chi_quadric(n, QuadricConvention::printed);
  return l + static_cast<long>(k + 1 - 2 * l) * q - static_cast<long>(k - l) * chi_space(Sphere{n});
}

inline long milnor_chi(int n, int k) { return 1 + k * sign_pow(n + 1); }

struct EulerRow {
  int l;
  long oracle;
  long printed;
  bool discrepancy() const { return oracle != printed; }
};

struct EulerReport {
  int n = 0, k = 0;
  std::vector<EulerRow> rows;  // l = 0..ceil(k/2)
  long oracle_slope = 0;       // chi(Q) - 2 + chi(S^n)
  long printed_slope = 0;      // 3 + 2(-1)^n - 2(n+1)
  long milnor = 0;             // 1 + k(-1)^{n+1}
  long quadric_oracle = 0, quadric_printed = 0;

  bool milnor_agrees() const { return !rows.empty() && rows.front().oracle == milnor; }

  /// Injectivity of a column over rows with l >= from_l.
  bool distinct(bool oracle_column, int from_l = 0) const {
    std::set<long> seen;
    std::size_t count = 0;
    for (const auto& r : rows) {
      if (r.l < from_l) continue;
      seen.insert(oracle_column ? r.oracle : r.printed);
      ++count;
    }
    return seen.size() == count;
  }
  bool oracle_distinct() const { return distinct(true); }

  /// Exact check that the oracle column is affine in l with the oracle slope.
  bool oracle_affine() const {
    for (const auto& r : rows) {
      if (r.oracle != rows.front().oracle + oracle_slope * r.l) return false;
    }
    return true;
  }

  bool any_discrepancy() const {
    for (const auto& r : rows) {
      if (r.discrepancy()) return true;
    }
    return false;
  }
};

inline EulerReport distinctness_report(int n, int k) {
  if (n < 1 || k < 1) throw DomainError("distinctness_report: n >= 1 and k >= 1 required");
  EulerReport rep;
  rep.n = n;
  rep.k = k;
  for (int l = 0; 2 * l <= k + 1; ++l) rep.rows.push_back({l, chi_filling(n, k, l), chi_filling_printed(n, k, l)});
  rep.quadric_oracle = chi_quadric(n);
  rep.quadric_printed = chi_quadric(n, QuadricConvention::printed);
  rep.oracle_slope = rep.quadric_oracle - 2 + chi_space(Sphere{n});
  rep.printed_slope = 3 + 2 * sign_pow(n) - 2 * (n + 1);
  rep.milnor = milnor_chi(n, k);
  return rep;
}

}  // namespace lbf::topo
