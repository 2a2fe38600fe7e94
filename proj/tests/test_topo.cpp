#include "lbf/topo/euler.hpp"

#include <gtest/gtest.h>

using namespace lbf;
using namespace lbf::topo;

namespace {

// Betti numbers of a smooth complex n-quadric, summed with signs.
long betti_oracle(int n) {
  std::vector<long> b(static_cast<std::size_t>(2 * n + 1), 0);
  for (int i = 0; i <= 2 * n; i += 2) b[static_cast<std::size_t>(i)] = 1;
  if (n % 2 == 0) b[static_cast<std::size_t>(n)] += 1;
  long chi = 0;
  for (std::size_t i = 0; i < b.size(); ++i) chi += (i % 2 == 0 ? 1 : -1) * b[i];
  return chi;
}

}  // namespace

TEST(ChiSpace, Examples) {
  EXPECT_EQ(chi_space(Sphere{2}), 2);
  EXPECT_EQ(chi_space(Sphere{3}), 0);
  EXPECT_EQ(chi_space(Quadric{1}), 2);
  EXPECT_EQ(chi_space(Quadric{1}, QuadricConvention::printed), 2);
  EXPECT_EQ(chi_space(Quadric{2}), 4);
  EXPECT_EQ(chi_space(Quadric{2}, QuadricConvention::printed), 2);
  EXPECT_EQ(chi_space(Disk{6}), 1);
  EXPECT_EQ(chi_space(DiskBundleOverQuadric{3}), 4);
  EXPECT_EQ(chi_space(DiskCotangentSphere{2}), 2);
  EXPECT_EQ(chi_space(Custom{"X", -7}), -7);
}

TEST(ChiSpace, QuadricMatchesBetti) {
  for (int n = 0; n <= 12; ++n) EXPECT_EQ(chi_quadric(n), betti_oracle(n)) << n;
  // the printed formula agrees exactly for odd n
  for (int n = 1; n <= 11; n += 2) EXPECT_EQ(chi_quadric(n, QuadricConvention::printed), betti_oracle(n));
  for (int n = 2; n <= 12; n += 2) EXPECT_NE(chi_quadric(n, QuadricConvention::printed), betti_oracle(n));
}

TEST(FiberSum, Examples) {
  EXPECT_EQ(chi_fiber_sum({4, 1}, 2), 3);
  EXPECT_EQ(chi_fiber_sum({5}, 2), 5);
  EXPECT_EQ(chi_fiber_sum({1, 1, 1, 1}, 2), -2);
  EXPECT_THROW(chi_fiber_sum({}, 2), ConfigError);
}

TEST(FiberSum, Associative) {
  const std::vector<long> parts = {4, 1, 1, 3, 0, 2};
  const long chi_f = 2;
  // ((a # b) # c) ... vs a # (b # (c # ...))
  long left = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) left = chi_fiber_sum({left, parts[i]}, chi_f);
  long right = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) right = chi_fiber_sum({parts[i], right}, chi_f);
  EXPECT_EQ(left, right);
  EXPECT_EQ(left, chi_fiber_sum(parts, chi_f));
}

TEST(Filling, Examples) {
  EXPECT_EQ(chi_filling(2, 3, 1), 2);
  EXPECT_EQ(chi_filling(2, 3, 0), -2);
  EXPECT_EQ(chi_filling(2, 5, 1), 0);
  EXPECT_EQ(chi_filling(2, 5, 2), 4);
  EXPECT_EQ(chi_filling(2, 5, 3), 8);
  EXPECT_THROW(chi_filling(2, 3, 3), DomainError);
}

TEST(Filling, MilnorOracle) {
  for (int n = 1; n <= 8; ++n) {
    for (int k = 1; k <= 15; ++k) EXPECT_EQ(chi_filling(n, k, 0), 1 + k * (n % 2 == 0 ? -1 : 1)) << n << " " << k;
  }
}

TEST(Filling, AffineInL) {
  for (int n = 1; n <= 8; ++n) {
    const long slope = chi_quadric(n) - 2 + chi_space(Sphere{n});
    for (int k = 1; k <= 15; ++k) {
      for (int l = 0; 2 * l <= k + 1; ++l) EXPECT_EQ(chi_filling(n, k, l), chi_filling(n, k, 0) + slope * l);
    }
  }
}

TEST(Report, NThreeKSeven) {
  auto rep = distinctness_report(3, 7);
  EXPECT_EQ(rep.oracle_slope, 2);
  EXPECT_TRUE(rep.oracle_distinct());
  EXPECT_TRUE(rep.oracle_affine());
  EXPECT_TRUE(rep.milnor_agrees());
  EXPECT_EQ(rep.rows.size(), 5u);
}

TEST(Report, PrintedSlopeNTwo) {
  for (int k = 1; k <= 6; ++k) {
    auto rep = distinctness_report(2, k);
    EXPECT_EQ(rep.printed_slope, -1);
    // the printed column really has that slope
    for (const auto& r : rep.rows) EXPECT_EQ(r.printed, rep.rows[0].printed + rep.printed_slope * r.l);
  }
}

TEST(Report, NOneNotDistinguished) {
  auto rep = distinctness_report(1, 5);
  EXPECT_EQ(rep.oracle_slope, 0);
  EXPECT_FALSE(rep.oracle_distinct());
}

TEST(Report, StrictlyMonotoneForNAtLeastTwo) {
  for (int n = 2; n <= 8; ++n) {
    for (int k = 1; k <= 15; ++k) {
      auto rep = distinctness_report(n, k);
      for (std::size_t i = 1; i < rep.rows.size(); ++i) EXPECT_GT(rep.rows[i].oracle, rep.rows[i - 1].oracle);
    }
  }
}

TEST(Report, DiscrepancyFlagged) {
  auto rep = distinctness_report(2, 5);
  EXPECT_TRUE(rep.any_discrepancy());
  EXPECT_EQ(rep.quadric_oracle, 4);
  EXPECT_EQ(rep.quadric_printed, 2);
}
