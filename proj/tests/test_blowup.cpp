#include "lbf/blowup/resolution.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace lbf;
using namespace lbf::blowup;

namespace {

MultiPoly var(std::size_t nv, std::size_t i, int k, const char* prefix = "x") {
  return MultiPoly::variable(nv, i, k, prefix);
}

// Evaluation by repeated multiplication, independent of the chart code.
Rational eval(const MultiPoly& p, const std::vector<Rational>& at) {
  Rational sum = 0;
  for (const auto& [e, c] : p.terms()) {
    Rational term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (int k = 0; k < e[i]; ++k) term *= at[i];
    }
    sum += term;
  }
  return sum;
}

std::vector<Rational> random_point(std::mt19937& rng, std::size_t nv) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  std::vector<Rational> out;
  for (std::size_t i = 0; i < nv; ++i) out.emplace_back(num(rng), den(rng));
  return out;
}

int ceil_half(int k) { return (k + 1) / 2; }

}  // namespace

TEST(MultiPoly, CanonicalText) {
  MultiPoly p = var(3, 2, 4) + var(3, 1, 2) + var(3, 0, 2);
  EXPECT_EQ(p.str(), "x0^2 + x1^2 + x2^4");
  MultiPoly q = MultiPoly::constant(2, 1, "y") + var(2, 1, 2, "y");
  EXPECT_EQ(q.str(), "1 + y1^2");
  EXPECT_EQ((Rational(-3, 2) * var(2, 0, 1)).str(), "-3/2*x0");
  EXPECT_EQ(MultiPoly(2).str(), "0");
}

TEST(MultiPoly, ArithmeticAgainstEvaluation) {
  std::mt19937 rng(3);
  MultiPoly a = var(3, 0, 2) - Rational(2) * var(3, 1, 1) * var(3, 2, 3) + MultiPoly::constant(3, 5);
  MultiPoly b = var(3, 1, 1) + Rational(1, 3) * var(3, 2, 2);
  for (int t = 0; t < 50; ++t) {
    auto pt = random_point(rng, 3);
    EXPECT_EQ(eval(a * b, pt), eval(a, pt) * eval(b, pt));
    EXPECT_EQ(eval(a - b, pt), eval(a, pt) - eval(b, pt));
    EXPECT_EQ(eval(b.pow(3), pt), eval(b, pt) * eval(b, pt) * eval(b, pt));
  }
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ(b.partial(2), Rational(2, 3) * var(3, 2, 1));
}

TEST(BlowupChart, Examples) {
  // x0^2 + x1^2 + x2^4 in chart 2 -> y2^2 (y0^2 + y1^2 + y2^2)
  const MultiPoly p = var(3, 0, 2) + var(3, 1, 2) + var(3, 2, 4);
  const MultiPoly expected = var(3, 2, 2, "y") * (var(3, 0, 2, "y") + var(3, 1, 2, "y") + var(3, 2, 2, "y"));
  EXPECT_EQ(blowup_chart(p, 2), expected);

  const MultiPoly q = var(2, 0, 2) + var(2, 1, 2);
  EXPECT_EQ(blowup_chart(q, 0), var(2, 0, 2, "y") * (MultiPoly::constant(2, 1, "y") + var(2, 1, 2, "y")));

  EXPECT_EQ(blowup_chart(var(1, 0, 1), 0), var(1, 0, 1, "y"));
}

TEST(BlowupChart, Errors) {
  EXPECT_THROW(blowup_chart(MultiPoly::constant(2, 1) + var(2, 0, 2), 0), DomainError);
  EXPECT_THROW(blowup_chart(var(2, 0, 2), 2), ConfigError);
}

TEST(ProperTransform, Examples) {
  {
    const MultiPoly p = var(3, 0, 2) + var(3, 1, 2) + var(3, 2, 2);
    auto [poly, mult] = proper_transform(p, 2);
    EXPECT_EQ(mult, 2);
    EXPECT_EQ(poly.str(), "1 + y0^2 + y1^2");
    EXPECT_EQ(classify(poly), SingularityVerdict::smooth());
  }
  {
    // y0 y1 in chart 0: the total transform is y0^2 y1
    auto [poly, mult] = proper_transform(var(2, 0, 1) * var(2, 1, 1), 0);
    EXPECT_EQ(poly, var(2, 1, 1, "y"));
    EXPECT_EQ(mult, 2);
  }
}

TEST(ProperTransform, AkFamilyStepOne) {
  for (int n = 0; n <= 4; ++n) {
    for (int k = 1; k <= 15; ++k) {
      const auto nv = static_cast<std::size_t>(n + 2), last = nv - 1;
      auto [poly, mult] = proper_transform(a_k_polynomial(k, n), last);
      MultiPoly expected = var(nv, last, k - 1, "y");
      for (std::size_t i = 0; i < last; ++i) expected += var(nv, i, 2, "y");
      EXPECT_EQ(poly, expected) << k << " " << n;
      EXPECT_EQ(mult, 2);
    }
  }
}

TEST(ProperTransform, MatchesPointwiseSubstitution) {
  std::mt19937 rng(11);
  const std::vector<MultiPoly> inputs = {
      a_k_polynomial(5, 2),
      var(3, 0, 3) - var(3, 1, 1) * var(3, 2, 2) + Rational(2, 5) * var(3, 2, 4),
      var(3, 0, 1) * var(3, 1, 1) * var(3, 2, 1) + var(3, 1, 5),
  };
  for (const auto& p : inputs) {
    for (std::size_t j = 0; j < p.nvars(); ++j) {
      auto [poly, mult] = proper_transform(p, j);
      EXPECT_EQ(poly.min_exponent(j), 0) << "still divisible by y" << j;
      for (int t = 0; t < 20; ++t) {
        auto y = random_point(rng, p.nvars());
        std::vector<Rational> x = y;
        for (std::size_t i = 0; i < x.size(); ++i) {
          if (i != j) x[i] = y[i] * y[j];
        }
        Rational scale = 1;
        for (int k = 0; k < mult; ++k) scale *= y[j];
        ASSERT_EQ(eval(p, x), scale * eval(poly, y)) << p.str() << " chart " << j;
      }
    }
  }
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(a_k_polynomial(4, 1)), SingularityVerdict::a_type(4));
  EXPECT_EQ(classify(a_k_polynomial(1, 3)), SingularityVerdict::a_type(1));
  EXPECT_EQ(classify(MultiPoly::constant(3, 1) + var(3, 0, 2) + var(3, 1, 2)), SingularityVerdict::smooth());
  const auto v = classify(var(2, 0, 3) + var(2, 1, 3));
  EXPECT_EQ(v.kind, SingularityVerdict::Kind::unclassified);
  EXPECT_EQ(v.reason, "not A-type normal form");
  EXPECT_EQ(v.str(), "Unclassified(not A-type normal form)");
}

TEST(Classify, PermutationAndUnitRescaling) {
  // x2^2 + x0^5 + x1^2 permuted, times -3/4
  const MultiPoly p = Rational(-3, 4) * (var(3, 2, 2) + var(3, 0, 5) + var(3, 1, 2));
  EXPECT_EQ(classify(p), SingularityVerdict::a_type(4));
  // unequal coefficients are outside the allowed rescalings
  EXPECT_EQ(classify(var(2, 0, 2) + Rational(2) * var(2, 1, 2)).kind, SingularityVerdict::Kind::unclassified);
  // a missing variable means a non-isolated singularity
  EXPECT_EQ(classify(var(3, 0, 2) + var(3, 1, 2)).kind, SingularityVerdict::Kind::unclassified);
  // mixed monomial
  EXPECT_EQ(classify(var(2, 0, 1) * var(2, 1, 1)).kind, SingularityVerdict::Kind::unclassified);
  // linear term: smooth
  EXPECT_EQ(classify(var(2, 0, 2) + var(2, 1, 1)), SingularityVerdict::smooth());
}

TEST(Resolve, Examples) {
  auto t3 = resolve_A(3, 1);
  ASSERT_EQ(t3.step_count(), 2u);
  EXPECT_EQ(t3.start_verdict, SingularityVerdict::a_type(3));
  EXPECT_EQ(t3.steps[0].verdict, SingularityVerdict::a_type(1));
  EXPECT_EQ(t3.steps[1].verdict, SingularityVerdict::smooth());
  EXPECT_TRUE(t3.resolved());

  auto t1 = resolve_A(1, 2);
  ASSERT_EQ(t1.step_count(), 1u);
  EXPECT_EQ(t1.steps[0].verdict, SingularityVerdict::smooth());

  auto t8 = resolve_A(8, 2);
  ASSERT_EQ(t8.step_count(), 4u);
  const int expected[] = {6, 4, 2};
  for (int i = 0; i < 3; ++i) EXPECT_EQ(t8.steps[static_cast<std::size_t>(i)].verdict, SingularityVerdict::a_type(expected[i]));
  EXPECT_EQ(t8.steps[3].verdict, SingularityVerdict::smooth());
}

TEST(Resolve, StepCountsAndIntermediateTypes) {
  for (int n = 0; n <= 4; ++n) {
    for (int k = 1; k <= 15; ++k) {
      auto tr = resolve_A(k, n);
      ASSERT_FALSE(tr.halted) << tr.diagnostic;
      ASSERT_EQ(static_cast<int>(tr.step_count()), ceil_half(k)) << k << " " << n;
      for (std::size_t j = 0; j + 1 < tr.steps.size(); ++j) {
        EXPECT_EQ(tr.steps[j].verdict, SingularityVerdict::a_type(k - 2 * static_cast<int>(j + 1)));
      }
      for (const auto& s : tr.steps) {
        EXPECT_EQ(s.multiplicity, 2);
        EXPECT_EQ(s.chart, static_cast<std::size_t>(n + 1));
      }
      EXPECT_TRUE(tr.resolved());
    }
  }
}

TEST(Resolve, ChartAuditMatchesDisplay) {
  for (int n = 0; n <= 3; ++n) {
    for (int k = 1; k <= 8; ++k) {
      for (const auto& a : audit_charts(k, n)) {
        EXPECT_TRUE(a.match()) << a.computed.str() << " vs " << a.printed.str();
        EXPECT_EQ(a.multiplicity, 2);
        // origin not on the proper transform: nothing left to resolve here
        EXPECT_EQ(classify(a.computed), SingularityVerdict::smooth());
      }
    }
  }
}

TEST(Mirror, MatchesSubstitutionChain) {
  for (int n = 0; n <= 4; ++n) {
    for (int k = 1; k <= 15; ++k) {
      auto tr = resolve_A(k, n);
      auto mirror = mirror_chain(tr);
      auto chain = mcg::substitution_chain(mcg::milnor_word(k, n), mcg::enumerate_fillings(k, n).back());
      ASSERT_EQ(mirror.size(), chain.size()) << k << " " << n;
      for (std::size_t i = 0; i < chain.size(); ++i) {
        EXPECT_EQ(mirror[i].pos, chain[i].pos);
        EXPECT_EQ(mirror[i].direction, chain[i].direction);
        EXPECT_EQ(mirror[i].before, chain[i].before);
        EXPECT_EQ(mirror[i].after, chain[i].after);
      }
    }
  }
}

TEST(Resolve, HaltsWithDiagnostic) {
  const MultiPoly cusp = var(3, 0, 3) + var(3, 1, 3) + var(3, 2, 2);
  auto tr = resolve_from(cusp, 2);
  EXPECT_TRUE(tr.halted);
  EXPECT_EQ(tr.step_count(), 0u);
  EXPECT_NE(tr.diagnostic.find("not A-type normal form"), std::string::npos) << tr.diagnostic;
  EXPECT_FALSE(tr.resolved());

  // any chart of an A1 point is smooth after one step
  const MultiPoly p = var(3, 0, 2) + var(3, 1, 2) + var(3, 2, 2);
  auto ok = resolve_from(p, 0);
  EXPECT_FALSE(ok.halted);
  EXPECT_EQ(ok.step_count(), 1u);
  EXPECT_THROW(resolve_from(p, 3), ConfigError);
}
