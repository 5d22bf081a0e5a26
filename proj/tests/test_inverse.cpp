#include "spectral/inverse.hpp"
#include "spectral/jost.hpp"
#include "spectral/mfunction.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace spectral;

TEST(Stieltjes, DiscreteTwoPointMeasure) {
  // Masses 1/2 at +-1: b_1 = 0, a_1 = 1, then degenerate.
  std::vector<double> x{-1.0, 1.0}, w{0.5, 0.5};
  auto s = stieltjes_discrete(x, w, 3);
  EXPECT_TRUE(s.degenerate);
  ASSERT_GE(s.b.size(), 1u);
  EXPECT_NEAR(s.b[0], 0.0, 1e-15);
  EXPECT_NEAR(s.a[0], 1.0, 1e-15);
  EXPECT_THROW(s.jacobi(), NumericalError);
  EXPECT_THROW(stieltjes_discrete(x, std::vector<double>{0.0, 0.0}, 3), ValidationError);
}

TEST(Stieltjes, FreeMeasureGivesFreeOperator) {
  auto J = stieltjes_reconstruct(ac_density(PerturbedJacobi::free(), 2048), 20);
  EXPECT_TRUE(J.is_free());
  EXPECT_THROW(stieltjes(ac_density(PerturbedJacobi::free(), 64), 61), ValidationError);
}

TEST(Stieltjes, RankOneFromMeasure) {
  auto J = stieltjes_reconstruct(ac_density(PerturbedJacobi({1.0}, {2.0}), 4096), 20);
  EXPECT_LT(J.max_deviation(PerturbedJacobi({1.0}, {2.0})), 1e-10);
}

TEST(MeasureFromL, RankOne) {
  auto m = measure_from_L(RealPolynomial({1.0, -2.0}));
  ASSERT_EQ(m.measure.points().size(), 1u);
  EXPECT_NEAR(m.measure.points()[0].energy, 2.5, 1e-12);
  EXPECT_NEAR(m.measure.points()[0].weight, 0.75, 1e-10);
  EXPECT_NEAR(m.scale, 1.0, 1e-10);
}

TEST(MeasureFromL, ScaleIsSquaredProductOfA) {
  auto m = measure_from_L(RealPolynomial({1.0, 0.0, -3.0}));
  EXPECT_NEAR(m.scale, 4.0, 1e-9);
}

TEST(MeasureFromL, RejectsInvalidDeterminants) {
  EXPECT_THROW(measure_from_L(RealPolynomial({2.0, -1.0})), ValidationError);            // L(0) != 1
  EXPECT_THROW(measure_from_L(RealPolynomial({1.0, 0.0, 4.0})), ValidationError);        // zeros +-i/2
  EXPECT_THROW(measure_from_L(RealPolynomial({1.0, -4.0, 4.0})), ValidationError);       // double zero 1/2
  // Zeros 0.5 and 0.6 of the same sign: the canonical weights cannot both be positive.
  EXPECT_THROW(measure_from_L(RealPolynomial({1.0, -2.0}) * RealPolynomial({1.0, -1.0 / 0.6})), ValidationError);
}

TEST(ReconstructFromL, RankOneAndRandomOperators) {
  auto r = reconstruct_from_L(RealPolynomial({1.0, -2.0}));
  EXPECT_LT(r.jacobi.max_deviation(PerturbedJacobi({1.0}, {2.0})), 1e-8);
  std::mt19937_64 rng(17);
  for (int t = 0; t < 5; ++t) {
    const auto J = oracle::random_jacobi(rng, 4);
    const auto L = jost_data(J).L;
    auto back = reconstruct_from_L(L);
    EXPECT_LT(back.jacobi.max_deviation(J), 1e-6);
  }
}

TEST(Roundtrip, RandomOperators) {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 10; ++t) EXPECT_LT(roundtrip_check(oracle::random_jacobi(rng)), 1e-6);
}
