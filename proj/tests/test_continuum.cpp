#include "spectral/continuum.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <cstdio>
#include <random>

using namespace spectral;

TEST(Potential, ValidationAndInterpolation) {
  EXPECT_THROW(ContinuumPotential({1.0}, 0.1), ValidationError);
  EXPECT_THROW(ContinuumPotential({1.0, 2.0}, 0.0), ValidationError);
  EXPECT_THROW(ContinuumPotential({1.0, NAN}, 0.1), ValidationError);
  ContinuumPotential V({0.0, 2.0, 4.0}, 0.5);
  EXPECT_DOUBLE_EQ(V.X(), 1.0);
  EXPECT_DOUBLE_EQ(V(0.25), 1.0);
  EXPECT_DOUBLE_EQ(V(1.5), 0.0);
  EXPECT_DOUBLE_EQ(ContinuumPotential({1.0, 0.0, 0.0, 0.0}, 0.5).effective_support(), 0.5);
  EXPECT_DOUBLE_EQ(ContinuumPotential::zero().effective_support(), 0.0);
}

TEST(Potential, CsvInput) {
  const auto path = std::filesystem::temp_directory_path() / "spectral_well.csv";
  {
    std::ofstream out(path);
    out << "x,V\n";
    for (int i = 0; i <= 10; ++i) out << 0.1 * i << "," << -5.0 << "\n";
  }
  auto V = read_potential_csv(path);
  EXPECT_NEAR(V.X(), 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(V.min(), -5.0);
}

TEST(JostOde, FreePlaneWave) {
  auto V = ContinuumPotential::zero(2.0, 0.01);
  const cplx z(4.0, 0.0);
  auto b = solve_jost_ode(V, z);
  EXPECT_EQ(b.u, cplx(1.0, 0.0));
  EXPECT_EQ(b.du, cplx(0.0, 2.0));
  EXPECT_EQ(weyl_M(V, 3.0), cplx(0.0, 3.0));
  EXPECT_THROW(solve_jost_ode(V, cplx(-1.0, 0.0)), ValidationError);
}

TEST(JostOde, SquareWellClosedForm) {
  auto V = ContinuumPotential::well(5.0, 1.0, 1e-3);
  for (cplx z : {cplx(4.0, 0.0), cplx(1.0, 0.0), cplx(-2.0, 0.5), cplx(30.0, 1.0)}) {
    auto b = solve_jost_ode(V, z);
    auto ref = oracle::square_well(5.0, z);
    EXPECT_LT(std::abs(b.u - ref.u), 1e-8 * std::abs(ref.u) + 1e-10) << z;
    EXPECT_LT(std::abs(b.du - ref.du), 1e-8 * std::abs(ref.du) + 1e-10) << z;
  }
  auto ref = oracle::square_well(5.0, 1.0);
  EXPECT_LT(std::abs(weyl_M(V, 1.0) - ref.du / ref.u), 1e-8);
}

TEST(JostOde, FourthOrderConvergence) {
  auto V = ContinuumPotential::well(5.0, 1.0, 0.1);
  const cplx z(4.0, 0.0);
  const auto ref = oracle::square_well(5.0, z);
  std::vector<double> logh, loge;
  for (double h : {0.1, 0.05, 0.025, 0.0125}) {
    JostOdeOptions o;
    o.step = h;
    o.check_resolution = false;
    auto b = solve_jost_ode(V, z, o);
    logh.push_back(std::log(h));
    loge.push_back(std::log(std::abs(b.u - ref.u) + std::abs(b.du - ref.du)));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < 4; ++i) { mx += logh[i] / 4; my += loge[i] / 4; }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < 4; ++i) { sxy += (logh[i] - mx) * (loge[i] - my); sxx += (logh[i] - mx) * (logh[i] - mx); }
  const double order = sxy / sxx;
  EXPECT_GE(order, 3.7);
  EXPECT_LE(order, 4.3);
}

TEST(WeylM, HerglotzOnRandomPotentials) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> vd(-10.0, 10.0), re(-20.0, 20.0), im(0.01, 10.0);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> s(101);
    double piece = vd(rng);
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i % 20 == 0) piece = vd(rng);
      s[i] = piece;
    }
    ContinuumPotential V(s, 0.01);
    EXPECT_GT(weyl_m(V, cplx(re(rng), im(rng))).imag(), 0.0);
  }
}

TEST(BoundStates, WellsAgainstMatchingEquation) {
  EXPECT_TRUE(bound_states(ContinuumPotential::zero()).empty());
  auto e5 = bound_states(ContinuumPotential::well(5.0, 1.0, 1e-3));
  auto r5 = oracle::well_bound_states(5.0);
  ASSERT_EQ(e5.size(), 1u);
  ASSERT_EQ(r5.size(), 1u);
  EXPECT_NEAR(e5[0], r5[0], 1e-8);
  for (double depth : {1.0, 20.0, 100.0}) {
    auto e = bound_states(ContinuumPotential::well(depth, 1.0, 1e-3));
    auto r = oracle::well_bound_states(depth);
    ASSERT_EQ(e.size(), r.size()) << depth;
    for (std::size_t k = 0; k < e.size(); ++k) EXPECT_NEAR(e[k], r[k], 1e-6 * std::abs(r[k])) << depth;
  }
}

TEST(SigmaTilde, FreeDensity) {
  auto V = ContinuumPotential::zero();
  std::vector<double> k, rho;
  for (double kk = 0.5; kk < 10.0; kk += 0.5) {
    k.push_back(kk);
    rho.push_back(weyl_M(V, kk).imag() / pi);
  }
  auto st = sigma_tilde_transform(k, rho);
  for (std::size_t i = 0; i < k.size(); ++i) EXPECT_NEAR(st[i], free_sigma_tilde(k[i]), 1e-6);
  auto zero = sigma_tilde_transform(k, std::vector<double>(k.size(), 0.0));
  for (double v : zero) EXPECT_EQ(v, 0.0);
}

TEST(FTilde, FreeAndBump) {
  std::vector<double> p, st, bump;
  const double dp = 0.001, mu = 0.3, w = 0.02;
  for (std::size_t j = 0; 1.0 + dp * j <= 20.0 + 1e-12; ++j) {
    const double pp = 1.0 + dp * j;
    p.push_back(pp);
    st.push_back(free_sigma_tilde(pp));
    bump.push_back(free_sigma_tilde(pp) + mu * std::exp(-(pp - 2.0) * (pp - 2.0) / (2 * w * w)) / (w * std::sqrt(2 * pi)));
  }
  std::vector<double> q{0.0, 1.0, 2.0, 3.0, 5.0};
  auto f0 = f_tilde(p, st, q);
  for (double v : f0.values) EXPECT_LT(std::abs(v), 1e-12);
  EXPECT_TRUE(f0.cutoff_stable);
  auto fb = f_tilde(p, bump, q);
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double approx = mu / std::sqrt(pi) * std::exp(-(q[i] - 2.0) * (q[i] - 2.0)) / 2.0;
    EXPECT_NEAR(fb.values[i], approx, 5e-3 * mu);
  }
}

TEST(ContinuumQuasiSzego, FreeIsZeroAndIntegrandNonnegative) {
  auto V = ContinuumPotential::zero();
  std::vector<double> k;
  std::vector<cplx> M;
  for (int i = 0; i < 400; ++i) {
    k.push_back(0.05 * (i + 0.5));
    M.push_back(weyl_M(V, k.back()));
  }
  auto q = quasi_szego_continuum(k, M);
  EXPECT_EQ(q.value, 0.0);
  EXPECT_EQ(q.verdict, Verdict::holds);
  EXPECT_THROW(quasi_szego_integrand(1.0, cplx(0.0, -1.0)), NumericalError);

  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> vd(-10.0, 10.0), kd(0.05, 30.0);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> s(201);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = vd(rng);
    ContinuumPotential W(s, 0.01);
    const double kk = kd(rng);
    EXPECT_GE(quasi_szego_integrand(kk, weyl_M(W, kk)), 0.0);
  }
}

TEST(ContinuumReport, FreeAndWell) {
  ContinuumOptions o;
  o.dk = 0.05;
  o.dp = 0.05;
  auto f = theorem_2_1_report(ContinuumPotential::zero(), o);
  EXPECT_TRUE(f.all_hold());
  for (const auto& e : f.entries()) EXPECT_EQ(e.value, 0.0) << e.label;
  auto w = theorem_2_1_report(ContinuumPotential::well(5.0, 1.0, 1e-3), o);
  EXPECT_TRUE(w.all_hold());
  const double e1 = oracle::well_bound_states(5.0)[0];
  EXPECT_NEAR(w.at("lieb_thirring").value, std::pow(-e1, 1.5), 1e-8);
}

TEST(ContinuumReport, RandomPiecewiseConstantPotentials) {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> vd(-10.0, 10.0);
  std::uniform_int_distribution<int> xd(2, 20), pieces(1, 5);
  ContinuumOptions o;
  o.dk = 0.1;
  o.q_max = 10.0;
  o.dp = 0.1;
  int holds = 0;
  for (int t = 0; t < 100; ++t) {
    const int cells = xd(rng) * 10;  // X = cells * 0.01 <= 2
    const int np = pieces(rng);
    std::vector<double> values(np);
    for (double& v : values) v = vd(rng);
    std::vector<double> s(cells + 1);
    for (int i = 0; i <= cells; ++i) s[i] = values[std::min(np - 1, i * np / (cells + 1))];
    ContinuumPotential V(s, 0.01);
    auto r = theorem_2_1_report(V, o);
    for (const auto& e : r.entries()) {
      EXPECT_NE(e.verdict, Verdict::fails) << t << " " << e.label;
      if (e.verdict == Verdict::holds) ++holds; else std::printf("inconclusive: %d %s\n", t, e.label.c_str());
    }
  }
  // Unresolved slow beats (jumps closer than the k range resolves) may leave
  // a verdict inconclusive, never failing.
  EXPECT_GE(holds, 390);
}
