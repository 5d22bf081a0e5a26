#include "spectral/jost.hpp"

#include "spectral/mfunction.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace spectral {

namespace {

// Drops trailing coefficients below 1e-16 of the largest one. Long
// truncations of decaying families produce coefficients far below rounding
// level whose companion matrix would overflow; zeros in the disk move by at
// most the dropped l1 mass.
RealPolynomial negligible_tail_removed(const RealPolynomial& p) {
  const auto coeffs = p.coefficients();
  double max_abs = 0.0;
  for (double c : coeffs) max_abs = std::max(max_abs, std::abs(c));
  std::vector<double> head(coeffs.begin(), coeffs.end());
  while (!head.empty() && std::abs(head.back()) < 1e-16 * max_abs) head.pop_back();
  return RealPolynomial(std::move(head));
}

}  // namespace

JostSolution jost_solution(const PerturbedJacobi& jacobi) {
  const std::size_t n_sup = jacobi.size();
  // Work with P_n = z^-n u_n:
  //   P_{n-1} = ((1 + z^2 - b_n z) P_n - a_n z^2 P_{n+1}) / a_{n-1},  a_0 = 1.
  std::vector<RealPolynomial> p(n_sup + 3);
  p[n_sup + 2] = RealPolynomial::constant(1.0);
  p[n_sup + 1] = RealPolynomial::constant(1.0);
  for (std::size_t n = n_sup + 1; n >= 1; --n) {
    const double a_prev = (n == 1) ? 1.0 : jacobi.a(n - 1);
    const RealPolynomial step({1.0, -jacobi.b(n), 1.0});
    const RealPolynomial z2_times = RealPolynomial::monomial(2, jacobi.a(n)) * p[n + 1];
    p[n - 1] = (step * p[n] - z2_times) * (1.0 / a_prev);
  }
  JostSolution out;
  out.u_n.reserve(n_sup + 2);
  for (std::size_t n = 0; n <= n_sup + 1; ++n) out.u_n.push_back(RealPolynomial::monomial(n) * p[n]);

  JostData& d = out.data;
  d.u = p[0];
  d.prod_a = jacobi.product_a();
  d.L = d.u * d.prod_a;
  const DiskZeros zeros = locate_disk_zeros(negligible_tail_removed(d.u));
  if (!zeros.complex_in_closed_disk.empty() || zeros.repeated) {
    throw NumericalError("Jost function has non-real or repeated zeros in the closed disk");
  }
  d.zeros_in_disk = zeros.real_in_disk;
  d.boundary_zeros = zeros.boundary;
  return out;
}

DiskZeros locate_disk_zeros(const RealPolynomial& p) {
  DiskZeros out;
  if (p.degree() <= 0) return out;
  const RealPolynomial dp = p.derivative();
  double coeff_scale = 0.0;
  for (double c : p.coefficients()) coeff_scale += std::abs(c);

  for (const cplx r : p.roots()) {
    const double mod = std::abs(r);
    if (mod > 1.0 + 1e-9) continue;
    const bool near_real = std::abs(r.imag()) <= 1e-7 * std::max(1.0, mod);
    if (!near_real) {
      out.complex_in_closed_disk.push_back(r);
      continue;
    }
    double x = r.real();
    // Real Newton polish.
    for (int it = 0; it < 20; ++it) {
      const double d = dp(x);
      if (d == 0.0) break;
      const double step = p(x) / d;
      x -= step;
      if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    if (std::abs(dp(x)) < 1e-8 * coeff_scale) out.repeated = true;
    if (std::abs(std::abs(x) - 1.0) <= 1e-9) {
      out.boundary.push_back(x > 0.0 ? 1.0 : -1.0);
    } else if (std::abs(x) < 1.0) {
      out.real_in_disk.push_back(x);
    }
  }
  auto check_distinct = [&](std::vector<double>& v) {
    std::sort(v.begin(), v.end());
    for (std::size_t i = 1; i < v.size(); ++i) {
      if (std::abs(v[i] - v[i - 1]) < 1e-7) out.repeated = true;
    }
    v.erase(std::unique(v.begin(), v.end(), [](double x, double y) { return std::abs(x - y) < 1e-7; }),
            v.end());
  };
  check_distinct(out.real_in_disk);
  check_distinct(out.boundary);
  return out;
}

cplx perturbation_determinant(const PerturbedJacobi& jacobi, cplx z) {
  if (jacobi.is_free()) return 1.0;
  const cplx gap = 1.0 - z * z;
  if (std::abs(gap) < 1e-12) throw NumericalError("perturbation determinant is singular at z = +-1");
  const Eigen::Index n = static_cast<Eigen::Index>(jacobi.size()) + 1;
  Eigen::MatrixXcd dj = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i) + 1;
    dj(i, i) = jacobi.b(k);
    if (i + 1 < n) {
      dj(i, i + 1) = jacobi.a(k) - 1.0;
      dj(i + 1, i) = jacobi.a(k) - 1.0;
    }
  }
  // Powers z^0 .. z^(2n).
  std::vector<cplx> pow(2 * static_cast<std::size_t>(n) + 1);
  pow[0] = 1.0;
  for (std::size_t k = 1; k < pow.size(); ++k) pow[k] = pow[k - 1] * z;
  Eigen::MatrixXcd g0(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto diff = static_cast<std::size_t>(std::abs(i - j));
      const auto sum = static_cast<std::size_t>(i + j + 2);
      g0(i, j) = -z * (pow[diff] - pow[sum]) / gap;
    }
  }
  const Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(n, n) + dj * g0;
  return Eigen::PartialPivLU<Eigen::MatrixXcd>(m).determinant();
}

cplx blaschke(cplx z, double z_k) {
  return (std::abs(z_k) / z_k) * (z_k - z) / (1.0 - z_k * z);
}

RealPolynomial jost_from_measure(std::span<const double> im_M, std::span<const double> zeros_in_disk,
                                 const FactorizationOptions& options) {
  const std::size_t g = im_M.size();
  if (g < 16) throw ValidationError("jost_from_measure requires G >= 16");
  if (options.coefficients < 2 || !(options.radius > 0.0 && options.radius < 1.0)) {
    throw ValidationError("jost_from_measure requires 0 < radius < 1 and at least 2 coefficients");
  }
  for (double z : zeros_in_disk) {
    if (!(std::abs(z) > 0.0 && std::abs(z) < 1.0)) throw ValidationError("zeros must lie in (-1, 1) \\ {0}");
  }
  // log(sin t / Im M) on the full circle: even in t, so the lower half
  // mirrors the upper half.
  const std::size_t full = 2 * g;
  std::vector<double> log_ratio(full);
  std::vector<cplx> nodes(full);
  for (std::size_t i = 0; i < g; ++i) {
    if (!(im_M[i] > 0.0)) {
      throw NumericalError("Im M vanishes on the boundary grid; the Poisson integral diverges");
    }
    const double t = SpectralMeasure::theta(i, g);
    log_ratio[i] = std::log(std::sin(t) / im_M[i]);
    log_ratio[full - 1 - i] = log_ratio[i];
  }
  for (std::size_t j = 0; j < full; ++j) nodes[j] = std::polar(1.0, SpectralMeasure::theta(j, g));
  const double dt = pi / static_cast<double>(g);

  const std::size_t k = options.coefficients;
  std::vector<cplx> samples(k);
  for (std::size_t m = 0; m < k; ++m) {
    const cplx zeta = std::polar(options.radius, 2.0 * pi * static_cast<double>(m) / static_cast<double>(k));
    cplx integral = 0.0;
    for (std::size_t j = 0; j < full; ++j) {
      integral += (nodes[j] + zeta) / (nodes[j] - zeta) * log_ratio[j];
    }
    integral *= dt / (4.0 * pi);
    cplx value = std::exp(integral);
    for (double zk : zeros_in_disk) value *= blaschke(zeta, zk);
    samples[m] = value;
  }
  std::vector<double> coeffs(k);
  double rn = 1.0;
  for (std::size_t n = 0; n < k; ++n) {
    cplx c = 0.0;
    for (std::size_t m = 0; m < k; ++m) {
      const double phase = -2.0 * pi * static_cast<double>(m * n % k) / static_cast<double>(k);
      c += samples[m] * std::polar(1.0, phase);
    }
    const double v = c.real() / static_cast<double>(k) / rn;
    coeffs[n] = std::abs(v) < 1e-12 ? 0.0 : v;
    rn *= options.radius;
  }
  return RealPolynomial(std::move(coeffs));
}

RealPolynomial jost_from_measure(const SpectralMeasure& measure, const FactorizationOptions& options) {
  std::vector<double> im(measure.density().begin(), measure.density().end());
  for (double& x : im) x *= pi;
  std::vector<double> zeros;
  for (const auto& p : measure.points()) {
    const double e = p.energy;
    const double s = e > 0.0 ? 1.0 : -1.0;
    // Root of z + 1/z = E inside the disk.
    zeros.push_back((e - s * std::sqrt(e * e - 4.0)) / 2.0);
  }
  return jost_from_measure(im, zeros, options);
}

double canonical_value(const RealPolynomial& u, double z0) {
  const double reflected = u(1.0 / z0);
  const double slope = u.derivative()(z0);
  if (reflected == 0.0 || slope == 0.0) {
    throw NumericalError("degenerate canonical weight: u'(z0) u(1/z0) = 0");
  }
  return (z0 - 1.0 / z0) / (slope * reflected);
}

double residue_of_M(const PerturbedJacobi& jacobi, double z0) {
  if (!(std::abs(z0) > 0.0 && std::abs(z0) < 1.0)) throw ValidationError("residue point must lie in (-1, 1) \\ {0}");
  const double toward_origin = z0 > 0.0 ? -1.0 : 1.0;
  const double base = std::min(1e-2, std::abs(z0) / 4.0);
  constexpr int levels = 5;
  std::array<double, levels> h{};
  std::array<double, levels> g{};
  for (int k = 0; k < levels; ++k) {
    h[k] = base * std::pow(10.0, -k);
    const double z = z0 + toward_origin * h[k];
    g[k] = ((z - z0) * eval_M(jacobi, z)).real();
  }
  // Neville extrapolation to h = 0.
  for (int level = 1; level < levels; ++level) {
    for (int k = 0; k + level < levels; ++k) {
      g[k] = (h[k] * g[k + 1] - h[k + level] * g[k]) / (h[k] - h[k + level]);
    }
  }
  return g[0];
}

CanonicalWeight canonical_weight_check(const PerturbedJacobi& jacobi, double z0, double tol) {
  const JostData data = jost_data(jacobi);
  double scale = 0.0;
  for (double c : data.u.coefficients()) scale += std::abs(c);
  if (std::abs(data.u(z0)) > 1e-8 * scale) {
    throw ValidationError("canonical_weight_check: z0 is not a zero of the Jost function");
  }
  CanonicalWeight out;
  out.canonical = canonical_value(data.u, z0);
  out.residue = residue_of_M(jacobi, z0);
  out.relative_difference = std::abs(out.residue - out.canonical) / std::abs(out.canonical);
  out.pass = out.relative_difference < tol;
  return out;
}

DecayEstimate decay_rate(const SequenceRule& rule, std::size_t n_max) {
  if (n_max < 100) throw ValidationError("decay_rate requires n_max >= 100");
  DecayEstimate out;
  double worst = 0.0;
  for (std::size_t n = n_max / 2; n <= n_max; ++n) {
    const double ld = rule.log_deviation(n);
    const double v = std::isfinite(ld) ? std::exp(ld / (2.0 * static_cast<double>(n))) : 0.0;
    out.trace.emplace_back(n, v);
    worst = std::max(worst, v);
  }
  if (rule.support().has_value() || worst == 0.0) {
    out.infinite = true;
    out.r_hat = std::numeric_limits<double>::infinity();
  } else {
    out.r_hat = std::max(1.0, 1.0 / worst);
  }
  return out;
}

RadiusEstimate analyticity_radius(std::span<const double> coefficients) {
  if (coefficients.size() < 8) throw ValidationError("analyticity_radius needs at least 8 coefficients");
  RadiusEstimate out;
  double max_abs = 0.0;
  for (double c : coefficients) max_abs = std::max(max_abs, std::abs(c));
  if (max_abs == 0.0) return out;
  const double floor = 1e-13 * max_abs;
  std::size_t last = 0;
  for (std::size_t n = 0; n < coefficients.size(); ++n) {
    if (std::abs(coefficients[n]) > floor) last = n;
  }
  out.significant = last + 1;
  if (last == 0) return out;
  double worst = 0.0;
  for (std::size_t n = std::max<std::size_t>(1, last / 2); n <= last; ++n) {
    const double c = std::abs(coefficients[n]);
    if (c > 0.0) worst = std::max(worst, std::exp(std::log(c) / static_cast<double>(n)));
  }
  out.infinite = false;
  out.radius = 1.0 / worst;
  return out;
}

RadiusEstimate analyticity_radius(const RealPolynomial& p) {
  RadiusEstimate out;
  out.significant = p.coefficients().size();
  return out;
}

double triple_norm_squared(std::span<const cplx> samples, cplx u0) {
  if (samples.empty()) return 0.0;
  double s = 0.0;
  for (const cplx v : samples) s += std::norm(v - u0);
  return s / static_cast<double>(samples.size());
}

double triple_norm_squared(const RealPolynomial& p, double r1, std::size_t grid) {
  if (!(r1 > 0.0) || grid < 16) throw ValidationError("triple_norm requires R1 > 0 and G >= 16");
  std::vector<cplx> samples(grid);
  for (std::size_t j = 0; j < grid; ++j) {
    const double t = 2.0 * pi * (static_cast<double>(j) + 0.5) / static_cast<double>(grid);
    samples[j] = p(std::polar(r1, t));
  }
  return triple_norm_squared(samples, p(cplx(0.0)));
}

namespace {

ConditionEntry canonical_entry(const PerturbedJacobi& jacobi, const std::vector<double>& zeros, double tol) {
  ConditionEntry e;
  e.label = "canonical_weights";
  e.verdict = Verdict::holds;
  double worst = 0.0;
  for (double z : zeros) {
    try {
      const CanonicalWeight w = canonical_weight_check(jacobi, z, tol);
      e.trace.push_back(w.relative_difference);
      worst = std::max(worst, w.relative_difference);
      if (!w.pass) e.verdict = Verdict::fails;
    } catch (const NumericalError& err) {
      e.verdict = Verdict::inconclusive;
      e.note += std::string(err.what()) + "; ";
    }
  }
  e.value = worst;
  e.note += zeros.empty() ? "no poles of M in the disk (vacuous)"
                          : "max relative residue/canonical mismatch over " + std::to_string(zeros.size()) + " poles";
  return e;
}

ConditionEntry poles_entry(const DiskZeros& zeros, const char* label) {
  ConditionEntry e;
  e.label = label;
  e.value = static_cast<double>(zeros.real_in_disk.size());
  e.trace = zeros.real_in_disk;
  const bool ok = zeros.complex_in_closed_disk.empty() && !zeros.repeated;
  e.verdict = ok ? Verdict::holds : Verdict::fails;
  e.note = std::to_string(zeros.real_in_disk.size()) + " real simple poles in D, " +
           std::to_string(zeros.boundary.size()) + " on the boundary, " +
           std::to_string(zeros.complex_in_closed_disk.size()) + " non-real";
  if (zeros.repeated) e.note += ", repeated pole detected";
  return e;
}

}  // namespace

ConditionReport theorem_4_1_report(const PerturbedJacobi& jacobi, double tol) {
  ConditionReport report("finite_rank");
  const JostSolution js = jost_solution(jacobi);
  const DiskZeros zeros = locate_disk_zeros(js.data.u);
  report.add(poles_entry(zeros, "rational_simple_real_poles"));

  ConditionEntry poly;
  poly.label = "u_polynomial";
  poly.value = static_cast<double>(js.data.u.degree());
  poly.verdict = js.data.u.degree() <= static_cast<int>(2 * jacobi.size()) ? Verdict::holds : Verdict::fails;
  poly.note = "degree of u; at most 2N for a rank-N perturbation";
  report.add(std::move(poly));

  report.add(canonical_entry(jacobi, zeros.real_in_disk, tol));
  return report;
}

ConditionReport theorem_4_2_report(const SequenceRule& rule, const ExponentialDecayOptions& options) {
  ConditionReport report("exponential_decay");
  const DecayEstimate decay = decay_rate(rule, options.decay_window);

  ConditionEntry d;
  d.label = "decay_rate";
  d.value = decay.r_hat;
  for (const auto& [n, v] : decay.trace) d.trace.push_back(v);
  d.verdict = (decay.infinite || decay.r_hat > 1.0) ? Verdict::holds : Verdict::fails;
  d.note = decay.infinite ? "finite rank: R = infinity" : "estimated R from the tail window";
  report.add(std::move(d));

  const PerturbedJacobi truncated =
      rule.kind() == RuleKind::finite ? rule.jacobi() : rule.truncate(options.truncation);
  const JostSolution js = jost_solution(truncated);
  const auto coeffs = js.data.u.coefficients();
  const DiskZeros zeros = locate_disk_zeros(negligible_tail_removed(js.data.u));
  report.add(poles_entry(zeros, "meromorphic_simple_real_poles"));

  ConditionEntry radius;
  radius.label = "u_analytic";
  RadiusEstimate est;
  if (rule.kind() == RuleKind::finite || coeffs.size() < 8) {
    est = analyticity_radius(js.data.u);
  } else {
    est = analyticity_radius(coeffs);
  }
  radius.value = est.radius;
  if (est.infinite) {
    radius.verdict = Verdict::holds;
    radius.note = "u is a polynomial (entire)";
  } else if (decay.infinite) {
    radius.verdict = Verdict::inconclusive;
    radius.note = "finite radius estimate for a finite-rank rule";
  } else {
    const double rel = (est.radius - decay.r_hat) / decay.r_hat;
    radius.trace = {decay.r_hat, rel};
    radius.verdict = rel >= -options.radius_tolerance ? Verdict::holds : Verdict::fails;
    radius.note = "Cauchy-Hadamard radius of u versus R_hat (relative difference in trace)";
  }
  report.add(std::move(radius));

  std::vector<double> required;
  const double inner = decay.infinite ? 0.0 : 1.0 / decay.r_hat;
  for (double z : zeros.real_in_disk) {
    if (std::abs(z) > inner) required.push_back(z);
  }
  report.add(canonical_entry(truncated, required, options.canonical_tolerance));
  return report;
}

}  // namespace spectral
