#include "spectral/jost.hpp"
#include "spectral/mfunction.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace spectral;

TEST(Jost, RankOnePolynomials) {
  auto d = jost_data(PerturbedJacobi({1.0}, {2.0}));
  EXPECT_EQ(d.u.max_coefficient_deviation(RealPolynomial({1.0, -2.0})), 0.0);
  EXPECT_EQ(d.L.max_coefficient_deviation(RealPolynomial({1.0, -2.0})), 0.0);
  ASSERT_EQ(d.zeros_in_disk.size(), 1u);
  EXPECT_NEAR(d.zeros_in_disk[0], 0.5, 1e-15);
}

TEST(Jost, OffDiagonalPerturbation) {
  // a_1 = 2: u = (1 - 3 z^2) / 2, L = 1 - 3 z^2.
  auto d = jost_data(PerturbedJacobi({2.0}, {0.0}));
  EXPECT_LT(d.u.max_coefficient_deviation(RealPolynomial({0.5, 0.0, -1.5})), 1e-15);
  EXPECT_LT(d.L.max_coefficient_deviation(RealPolynomial({1.0, 0.0, -3.0})), 1e-15);
  EXPECT_DOUBLE_EQ(d.prod_a, 2.0);
}

TEST(Jost, FreeIsOne) {
  auto d = jost_data(PerturbedJacobi::free());
  EXPECT_EQ(d.u.max_coefficient_deviation(RealPolynomial::constant(1.0)), 0.0);
  EXPECT_TRUE(d.zeros_in_disk.empty());
}

TEST(Jost, DegreeBoundAndSolutionTail) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto J = oracle::random_jacobi(rng);
    auto s = jost_solution(J);
    EXPECT_LE(s.data.u.degree(), static_cast<int>(2 * J.size()));
    EXPECT_NEAR(s.data.L(0.0), 1.0, 1e-12);
    EXPECT_EQ(s.u_n.back().max_coefficient_deviation(RealPolynomial::monomial(J.size() + 1)), 0.0);
  }
}

TEST(Jost, MIsRatioOfJostSolutions) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    const auto J = oracle::random_jacobi(rng);
    auto s = jost_solution(J);
    const cplx z(0.3, 0.35);
    EXPECT_LT(std::abs(s.u_n[1](z) / s.u_n[0](z) - oracle::M_truncated(J, z)), 1e-10);
  }
}

TEST(PerturbationDeterminant, MatchesProdATimesU) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  for (int t = 0; t < 20; ++t) {
    const auto J = oracle::random_jacobi(rng);
    const auto d = jost_data(J);
    for (int k = 0; k < 5; ++k) {
      const cplx z(u(rng), u(rng));
      if (std::abs(1.0 - z * z) < 1e-3) continue;
      EXPECT_LT(std::abs(perturbation_determinant(J, z) - d.L(z)), 1e-10 * std::max(1.0, std::abs(d.L(z))));
    }
  }
  EXPECT_THROW(perturbation_determinant(PerturbedJacobi({1.0}, {1.0}), cplx(1.0, 0.0)), NumericalError);
}

TEST(Blaschke, UnimodularOnCircle) {
  for (double t : {0.1, 1.0, 2.5}) EXPECT_NEAR(std::abs(blaschke(std::polar(1.0, t), -0.4)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(blaschke(cplx(0.3, 0.0), 0.3)), 0.0, 1e-16);
  EXPECT_GT(blaschke(cplx(0.0, 0.0), -0.4).real(), 0.0);
}

TEST(JostFromMeasure, RecoversPolynomial) {
  auto J = PerturbedJacobi({1.0}, {2.0});
  auto u = jost_from_measure(ac_density(J, 4096));
  EXPECT_LT(u.max_coefficient_deviation(RealPolynomial({1.0, -2.0})), 1e-8);
  auto free_u = jost_from_measure(ac_density(PerturbedJacobi::free(), 1024));
  EXPECT_LT(free_u.max_coefficient_deviation(RealPolynomial::constant(1.0)), 1e-12);
}

TEST(CanonicalWeight, RankOne) {
  auto J = PerturbedJacobi({1.0}, {2.0});
  EXPECT_NEAR(residue_of_M(J, 0.5), -0.25, 1e-9);
  EXPECT_NEAR(canonical_value(RealPolynomial({1.0, -2.0}), 0.5), -0.25, 1e-15);
  auto c = canonical_weight_check(J, 0.5, 1e-8);
  EXPECT_TRUE(c.pass);
  EXPECT_THROW(canonical_weight_check(J, 0.25, 1e-8), ValidationError);
}

TEST(CanonicalWeight, RandomOperators) {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 15; ++t) {
    const auto J = oracle::random_jacobi(rng);
    for (double z0 : jost_data(J).zeros_in_disk) {
      if (std::abs(z0) > 0.97) continue;  // residue stepping needs room
      auto c = canonical_weight_check(J, z0, 1e-6);
      EXPECT_TRUE(c.pass) << z0 << " " << c.relative_difference;
    }
  }
}

TEST(DecayRate, Families) {
  auto e = decay_rate(SequenceRule::exponential(1.0, 0.25), 500);
  EXPECT_NEAR(e.r_hat, 2.0, 0.1);
  EXPECT_TRUE(decay_rate(SequenceRule::finite(PerturbedJacobi({1.0}, {1.0})), 200).infinite);
  auto p = decay_rate(SequenceRule::power(1.0, 1.0, RuleTarget::b), 1000);
  EXPECT_LT(p.r_hat, 1.01);
}

TEST(AnalyticityRadius, GeometricSeries) {
  std::vector<double> c(60);
  for (std::size_t n = 0; n < c.size(); ++n) c[n] = std::pow(0.5, static_cast<double>(n));
  EXPECT_NEAR(analyticity_radius(c).radius, 2.0, 0.05);
  EXPECT_TRUE(analyticity_radius(RealPolynomial({1.0, 2.0})).infinite);
}

TEST(TripleNorm, Monomial) {
  // |||c z^k|||^2 on radius r: c^2 r^(2k).
  EXPECT_NEAR(triple_norm_squared(RealPolynomial({0.0, 0.0, 3.0}), 0.5, 64), 9.0 / 16.0, 1e-14);
}

TEST(Reports, JostAndDecayReports) {
  auto r = theorem_4_1_report(PerturbedJacobi({1.0}, {2.0}));
  EXPECT_TRUE(r.all_hold());
  EXPECT_EQ(r.entries().size(), 3u);
  auto e = theorem_4_2_report(SequenceRule::exponential(1.0, 0.25));
  EXPECT_EQ(e.at("decay_rate").verdict, Verdict::holds);
  EXPECT_EQ(e.at("u_analytic").verdict, Verdict::holds);
  EXPECT_TRUE(e.all_hold());
}
