#include "spectral/core.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace spectral;

TEST(PerturbedJacobi, RejectsNonPositiveA) {
  EXPECT_THROW(PerturbedJacobi({-1.0}, {0.0}), ValidationError);
  EXPECT_THROW(PerturbedJacobi({0.0}, {0.0}), ValidationError);
  EXPECT_THROW(PerturbedJacobi({1.0, 2.0}, {0.0}), ValidationError);
  try {
    PerturbedJacobi({-1.0}, {0.0});
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("a must be positive"), std::string::npos);
  }
}

TEST(PerturbedJacobi, TrimsFreeTailAndReadsOnePastSupport) {
  PerturbedJacobi J({2.0, 1.0, 1.0}, {0.5, 0.0, 0.0});
  EXPECT_EQ(J.size(), 1u);
  EXPECT_DOUBLE_EQ(J.a(1), 2.0);
  EXPECT_DOUBLE_EQ(J.a(7), 1.0);
  EXPECT_DOUBLE_EQ(J.b(7), 0.0);
  EXPECT_TRUE(PerturbedJacobi({1.0}, {0.0}).is_free());
  EXPECT_EQ(trim(J), J);
  EXPECT_DOUBLE_EQ(PerturbedJacobi({2.0, 3.0}, {0.0, 1.0}).product_a(), 6.0);
}

TEST(PerturbedJacobi, MaxDeviationOverUnionOfSupports) {
  PerturbedJacobi A({2.0}, {0.0});
  PerturbedJacobi B({2.0, 1.0}, {0.0, 0.25});
  EXPECT_DOUBLE_EQ(A.max_deviation(B), 0.25);
  EXPECT_DOUBLE_EQ(A.max_deviation(PerturbedJacobi::free()), 1.0);
}

TEST(SequenceRule, ClosedForms) {
  auto p = SequenceRule::power(1.0, 1.0, RuleTarget::b);
  EXPECT_DOUBLE_EQ(p(4).second, 0.25);
  EXPECT_DOUBLE_EQ(p(4).first, 1.0);
  auto pa = SequenceRule::power(0.5, 2.0, RuleTarget::a);
  EXPECT_DOUBLE_EQ(pa(2).first, 1.125);
  auto alt = SequenceRule::alternating(1.0, 1.0);
  EXPECT_DOUBLE_EQ(alt(3).second, -1.0 / 3.0);
  EXPECT_DOUBLE_EQ(alt(2).second, 0.5);
  auto ex = SequenceRule::exponential(1.0, 0.25);
  EXPECT_DOUBLE_EQ(ex(2).second, 0.0625);
  // 0.25^2000 underflows but the log-deviation stays exact.
  EXPECT_NEAR(ex.log_deviation(2000), 2000.0 * std::log(0.25), 1e-9);
  EXPECT_THROW(SequenceRule::exponential(1.0, 1.0), ValidationError);
  EXPECT_THROW(SequenceRule::power(-1.0, 1.0, RuleTarget::a), ValidationError);
}

TEST(SequenceRule, FiniteSupportAndTruncation) {
  auto r = SequenceRule::finite(PerturbedJacobi({1.5, 1.0}, {0.0, 0.3}));
  ASSERT_TRUE(r.support().has_value());
  EXPECT_EQ(*r.support(), 2u);
  EXPECT_FALSE(SequenceRule::power(1.0, 1.0, RuleTarget::b).support().has_value());
  EXPECT_TRUE(std::isinf(r.log_deviation(5)));
  auto t = SequenceRule::exponential(1.0, 0.5).truncate(3);
  EXPECT_EQ(t.size(), 3u);
  EXPECT_DOUBLE_EQ(t.b(3), 0.125);
}

TEST(SpectralMeasure, FreeDensityHasUnitMass) {
  const std::size_t g = 512;
  std::vector<double> f(g);
  for (std::size_t i = 0; i < g; ++i) f[i] = std::sin(SpectralMeasure::theta(i, g)) / pi;
  SpectralMeasure m({}, f);
  EXPECT_NEAR(m.total_mass(), 1.0, 1e-14);
  EXPECT_THROW(SpectralMeasure({{1.0, 0.5}}, f), ValidationError);
  EXPECT_THROW(SpectralMeasure({{3.0, -0.5}}, f), ValidationError);
}

TEST(SpectralMeasure, SortsPointMasses) {
  SpectralMeasure m({{3.0, 0.1}, {-2.5, 0.2}}, std::vector<double>(16, 0.0));
  EXPECT_DOUBLE_EQ(m.points()[0].energy, -2.5);
  EXPECT_NEAR(m.point_mass(), 0.3, 1e-15);
}

TEST(RealPolynomial, Arithmetic) {
  RealPolynomial p({1.0, -2.0});
  RealPolynomial q({0.0, 0.0, 3.0});
  EXPECT_EQ((p * q).degree(), 3);
  EXPECT_DOUBLE_EQ((p * q).coefficient(3), -6.0);
  EXPECT_DOUBLE_EQ((p + q)(2.0), 1.0 - 4.0 + 12.0);
  EXPECT_EQ((p - p).degree(), -1);
  EXPECT_DOUBLE_EQ(q.derivative()(1.0), 6.0);
  EXPECT_DOUBLE_EQ(p.max_coefficient_deviation(RealPolynomial({1.0, -2.0, 1e-3})), 1e-3);
  const cplx v = p(cplx(0.0, 1.0));
  EXPECT_DOUBLE_EQ(v.real(), 1.0);
  EXPECT_DOUBLE_EQ(v.imag(), -2.0);
}

TEST(RealPolynomial, RootsOfKnownProduct) {
  RealPolynomial p = RealPolynomial({-0.5, 1.0}) * RealPolynomial({2.0, 1.0}) * RealPolynomial({1.0, 0.0, 1.0});
  auto r = p.roots();
  ASSERT_EQ(r.size(), 4u);
  int real_count = 0;
  for (cplx z : r) {
    EXPECT_LT(std::abs(p(z)), 1e-12);
    if (std::abs(z.imag()) < 1e-12) ++real_count;
  }
  EXPECT_EQ(real_count, 2);
}

TEST(ConditionReport, LabelsAreUnique) {
  ConditionReport r("t");
  r.add({"x", 1.0, {}, Verdict::holds, ""});
  EXPECT_THROW(r.add({"x", 2.0, {}, Verdict::holds, ""}), std::exception);
  r.add({"y", 0.0, {}, Verdict::not_applicable, ""});
  EXPECT_TRUE(r.all_hold());
  r.add({"z", 0.0, {}, Verdict::inconclusive, ""});
  EXPECT_FALSE(r.all_hold());
  EXPECT_DOUBLE_EQ(r.at("x").value, 1.0);
}

TEST(Dyadic, ConvergentDivergentStalled) {
  DyadicOptions o;
  // Partial sums of 1/n^2 at 2^k: increments halve.
  auto partial = [](std::size_t n, double s) {
    double v = 0.0;
    for (std::size_t k = 1; k <= n; ++k) v += std::pow(static_cast<double>(k), -s);
    return v;
  };
  std::vector<double> conv, harm;
  for (std::size_t n = 1000; n <= 16000; n *= 2) {
    conv.push_back(partial(n, 4.0));
    harm.push_back(partial(n, 1.0));
  }
  EXPECT_EQ(dyadic_test(conv, o).verdict, Verdict::holds);
  EXPECT_EQ(dyadic_test(harm, o).verdict, Verdict::fails);
  EXPECT_EQ(dyadic_test({1.0, 1e7}, o).verdict, Verdict::fails);
  o.geometric_ratio = 0.75;
  std::vector<double> slow;
  for (std::size_t n = 1000; n <= 16000; n *= 2) slow.push_back(partial(n, 2.0));
  EXPECT_EQ(dyadic_test(slow, o).verdict, Verdict::holds);
  EXPECT_EQ(to_string(Verdict::inconclusive), "inconclusive");
}
