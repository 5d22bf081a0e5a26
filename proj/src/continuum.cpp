#include "spectral/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace spectral {

ContinuumPotential::ContinuumPotential(std::vector<double> samples, double h)
    : samples_(std::move(samples)), h_(h) {
  if (samples_.size() < 2) throw ValidationError("potential needs at least two samples");
  if (!(h_ > 0.0) || !std::isfinite(h_)) throw ValidationError("potential step h must be positive");
  for (double v : samples_) {
    if (!std::isfinite(v)) throw ValidationError("potential samples must be finite");
  }
}

ContinuumPotential ContinuumPotential::well(double depth, double width, double h) {
  const auto cells = static_cast<std::size_t>(std::llround(width / h));
  if (cells < 1 || std::abs(static_cast<double>(cells) * h - width) > 1e-9 * width) {
    throw ValidationError("well width must be a multiple of h");
  }
  return ContinuumPotential(std::vector<double>(cells + 1, -depth), h);
}

ContinuumPotential ContinuumPotential::zero(double X, double h) {
  const auto cells = static_cast<std::size_t>(std::llround(X / h));
  return ContinuumPotential(std::vector<double>(std::max<std::size_t>(cells, 1) + 1, 0.0), h);
}

double ContinuumPotential::effective_support() const {
  std::size_t last = samples_.size();
  for (std::size_t i = samples_.size(); i-- > 0;) {
    if (samples_[i] != 0.0) {
      last = i;
      break;
    }
  }
  if (last == samples_.size()) return 0.0;
  return h_ * static_cast<double>(std::min(last + 1, samples_.size() - 1));
}

double ContinuumPotential::operator()(double x) const {
  // Nodes computed as step * n may overshoot the grid ends by rounding.
  const double slack = 1e-12 * X();
  if (x < -slack || x > X() + slack) return 0.0;
  const double s = std::clamp(x, 0.0, X()) / h_;
  const auto i = std::min(static_cast<std::size_t>(s), samples_.size() - 2);
  const double t = s - static_cast<double>(i);
  return (1.0 - t) * samples_[i] + t * samples_[i + 1];
}

double ContinuumPotential::min() const { return *std::min_element(samples_.begin(), samples_.end()); }

double ContinuumPotential::max_abs() const {
  double m = 0.0;
  for (double v : samples_) m = std::max(m, std::abs(v));
  return m;
}

ContinuumPotential read_potential_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open potential file " + path.string());
  std::vector<double> xs, vs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double x = 0.0, v = 0.0;
    if (!(row >> x >> v)) {
      if (xs.empty()) continue;  // header
      throw ValidationError("malformed potential row: " + line);
    }
    xs.push_back(x);
    vs.push_back(v);
  }
  if (xs.size() < 2) throw ValidationError("potential CSV needs at least two rows");
  const double h = xs[1] - xs[0];
  if (std::abs(xs[0]) > 1e-12) throw ValidationError("potential grid must start at x = 0");
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (std::abs(xs[i] - xs[0] - h * static_cast<double>(i)) > 1e-9 * std::max(1.0, xs[i])) {
      throw ValidationError("potential grid must be uniform");
    }
  }
  return ContinuumPotential(std::move(vs), h);
}

namespace {

cplx upper_sqrt(cplx z) {
  cplx s = std::sqrt(z);
  if (s.imag() < 0.0) s = -s;
  return s;
}

// Backward RK4 on [0, xe] in `steps` equal steps, starting from (u, du) at xe.
template <typename T>
std::pair<T, T> integrate(const ContinuumPotential& V, T energy, T u, T du, double xe, std::size_t steps) {
  const double s = xe / static_cast<double>(steps);
  auto acc = [&](double x, T y) { return (V(x) - energy) * y; };
  for (std::size_t n = steps; n > 0; --n) {
    const double x = s * static_cast<double>(n);
    const double xm = x - 0.5 * s;
    const double x1 = s * static_cast<double>(n - 1);
    // y' = (du, (V - E) u), stepping by -s.
    const T k1u = du, k1d = acc(x, u);
    const T k2u = du - 0.5 * s * k1d, k2d = acc(xm, u - 0.5 * s * k1u);
    const T k3u = du - 0.5 * s * k2d, k3d = acc(xm, u - 0.5 * s * k2u);
    const T k4u = du - s * k3d, k4d = acc(x1, u - s * k3u);
    u -= s / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    du -= s / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
  }
  return {u, du};
}

// Steps aligned with the sampling grid: each cell of width h is split into
// ceil(h / target) pieces.
std::size_t step_count(const ContinuumPotential& V, double xe, double target) {
  const auto cells = static_cast<std::size_t>(std::llround(xe / V.h()));
  const auto per_cell = static_cast<std::size_t>(std::ceil(V.h() / target - 1e-9));
  return std::max<std::size_t>(cells, 1) * std::max<std::size_t>(per_cell, 1);
}

// log2 of max |y| on [x_hi/2, x_hi] over max |y| on [x_hi/8, x_hi/2): the
// growth exponent of a power-law envelope across the last octave. Taking the
// lower maximum over two octaves keeps quasi-periodic beats from reading as
// growth. -inf when y is negligible on the last octave.
double envelope_growth(std::span<const double> x, std::span<const double> y, double x_hi) {
  double lower = 0.0, upper = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 0.125 * x_hi || x[i] > x_hi) continue;
    double& m = x[i] < 0.5 * x_hi ? lower : upper;
    m = std::max(m, std::abs(y[i]));
  }
  if (upper <= 1e-12) return -std::numeric_limits<double>::infinity();
  if (lower <= 1e-300) return std::numeric_limits<double>::infinity();
  return std::log2(upper / lower);
}

// Integrability from the growth exponent of an envelope bound: below 1/2
// the tail is certified, at or above 1 it is not integrable.
Verdict growth_verdict(double exponent) {
  if (exponent < 0.5) return Verdict::holds;
  if (exponent >= 1.0) return Verdict::fails;
  return Verdict::inconclusive;
}

}  // namespace

JostBoundary solve_jost_ode(const ContinuumPotential& V, cplx z, const JostOdeOptions& options) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw ValidationError("z must be finite");
  if (z.imag() == 0.0 && !(z.real() > 0.0)) {
    throw ValidationError("solve_jost_ode needs Im z != 0 or z = k^2 with k > 0");
  }
  const cplx s = upper_sqrt(z);
  const double xe = V.effective_support();
  const cplx u0 = std::exp(cplx(0.0, 1.0) * s * xe);
  const cplx du0 = cplx(0.0, 1.0) * s * u0;
  JostBoundary out{u0, du0, 0.0, 0.0};
  if (xe == 0.0) return out;

  const double scale = std::sqrt(std::max(1.0, V.max_abs() + std::abs(z)));
  const double target = options.step > 0.0 ? options.step : std::min(V.h(), options.phase_step / scale);
  const std::size_t n = step_count(V, xe, target);
  auto [u1, d1] = integrate<cplx>(V, z, u0, du0, xe, n);
  out.u = u1;
  out.du = d1;
  out.step = xe / static_cast<double>(n);
  if (!options.check_resolution) return out;

  auto [u2, d2] = integrate<cplx>(V, z, u0, du0, xe, 2 * n);
  const double size = std::max({std::abs(u2), std::abs(d2), 1e-300});
  out.resolution = std::max(std::abs(u1 - u2), std::abs(d1 - d2)) / size;
  out.u = u2;
  out.du = d2;
  out.step = 0.5 * out.step;
  if (out.resolution > options.resolution_tolerance) {
    throw NumericalError("under-resolved Jost ODE: step halving changes the boundary data by " +
                         std::to_string(out.resolution));
  }
  return out;
}

cplx weyl_m(const ContinuumPotential& V, cplx z, const JostOdeOptions& options) {
  const JostBoundary b = solve_jost_ode(V, z, options);
  if (std::abs(b.u) <= 1e-13 * std::abs(b.du)) {
    throw NumericalError("u(0; z) vanishes: bound state or resonance hit");
  }
  return b.du / b.u;
}

cplx weyl_M(const ContinuumPotential& V, double k, const JostOdeOptions& options) {
  if (!(k > 0.0)) throw ValidationError("M(k) needs k > 0");
  return weyl_m(V, cplx(k * k, 0.0), options);
}

std::vector<double> bound_states(const ContinuumPotential& V, double tolerance) {
  const double vmin = V.min();
  const double xe = V.effective_support();
  if (vmin >= 0.0 || xe == 0.0) return {};
  const double kappa_max = std::sqrt(-vmin);
  const double target = std::min(V.h(), 0.002 / std::sqrt(std::max(1.0, -vmin)));
  const std::size_t steps = step_count(V, xe, target);

  // Decaying seed, rescaled to u(X) = 1.
  auto f = [&](double kappa) { return integrate<double>(V, -kappa * kappa, 1.0, -kappa, xe, steps).first; };

  // Zero-energy solution constant beyond X: its interior nodes count the
  // bound states.
  std::size_t expected = 0;
  {
    const double s = xe / static_cast<double>(steps);
    double u = 1.0, du = 0.0;
    auto acc = [&](double x, double y) { return V(x) * y; };
    for (std::size_t n = steps; n > 0; --n) {
      const double x = s * static_cast<double>(n);
      const double xm = x - 0.5 * s;
      const double x1 = s * static_cast<double>(n - 1);
      const double k1u = du, k1d = acc(x, u);
      const double k2u = du - 0.5 * s * k1d, k2d = acc(xm, u - 0.5 * s * k1u);
      const double k3u = du - 0.5 * s * k2d, k3d = acc(xm, u - 0.5 * s * k2u);
      const double k4u = du - s * k3d, k4d = acc(x1, u - s * k3u);
      const double next = u - s / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
      du -= s / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
      if (n > 1 && ((next < 0.0) != (u < 0.0))) ++expected;
      u = next;
    }
  }

  std::vector<double> roots;
  for (std::size_t scan = 400; scan <= 6400; scan *= 4) {
    roots.clear();
    std::vector<double> kap(scan + 1), val(scan + 1);
    for (std::size_t j = 0; j <= scan; ++j) {
      kap[j] = kappa_max * static_cast<double>(j) / static_cast<double>(scan);
      val[j] = f(kap[j]);
    }
    for (std::size_t j = 0; j < scan; ++j) {
      if (val[j] == 0.0 && j > 0) {
        roots.push_back(-kap[j] * kap[j]);
        continue;
      }
      if ((val[j] < 0.0) == (val[j + 1] < 0.0) || val[j + 1] == 0.0) continue;
      double lo = kap[j], hi = kap[j + 1], flo = val[j];
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi || (hi - lo) * (hi + lo) < tolerance) break;
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      const double kappa = 0.5 * (lo + hi);
      if (kappa > 0.0) roots.push_back(-kappa * kappa);
    }
    if (roots.size() >= expected) break;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

ContinuumSpectralData spectral_data(const ContinuumPotential& V, std::span<const double> k,
                                    double bound_state_tolerance) {
  ContinuumSpectralData out;
  out.bound_states = bound_states(V, bound_state_tolerance);
  out.k.assign(k.begin(), k.end());
  out.M.reserve(k.size());
  for (double kk : k) out.M.push_back(weyl_M(V, kk));
  return out;
}

std::vector<double> sigma_tilde_transform(std::span<const double> k, std::span<const double> rho_density) {
  if (k.size() != rho_density.size()) throw ValidationError("k grid and density differ in length");
  std::vector<double> out(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) out[i] = 2.0 * k[i] * rho_density[i];
  return out;
}

FTilde f_tilde(std::span<const double> p, std::span<const double> sigma_tilde, std::span<const double> q) {
  if (p.size() != sigma_tilde.size() || p.size() < 3) throw ValidationError("p grid and samples mismatch");
  if (std::abs(p[0] - 1.0) > 1e-12) throw ValidationError("p grid must start at 1");
  const double dp = p[1] - p[0];
  for (std::size_t j = 1; j < p.size(); ++j) {
    if (std::abs(p[j] - p[0] - dp * static_cast<double>(j)) > 1e-9 * p[j]) {
      throw ValidationError("p grid must be uniform");
    }
  }
  constexpr double window = 8.0 / 1.4142135623730951;  // exp(-x^2) has sd 1/sqrt 2
  const double norm = 1.0 / std::sqrt(pi);
  auto transform = [&](double qq, std::size_t last) {
    double s = 0.0;
    for (std::size_t j = 0; j <= last; ++j) {
      const double d = qq - p[j];
      if (std::abs(d) > window) continue;
      const double w = (j == 0 || j == last) ? 0.5 * dp : dp;
      s += w * std::exp(-d * d) * (sigma_tilde[j] - free_sigma_tilde(p[j])) / p[j];
    }
    return norm * s;
  };
  const double cut = 0.5 * (p.back() + 1.0);
  std::size_t half = 0;
  while (half + 1 < p.size() && p[half + 1] <= cut) ++half;

  FTilde out;
  out.q.assign(q.begin(), q.end());
  out.values.reserve(q.size());
  for (double qq : q) {
    const double full = transform(qq, p.size() - 1);
    out.values.push_back(full);
    out.cutoff_change = std::max(out.cutoff_change, std::abs(full - transform(qq, half)));
  }
  out.cutoff_stable = out.cutoff_change <= 1e-6;
  return out;
}

double quasi_szego_integrand(double k, cplx M) {
  if (!(M.imag() > 0.0)) throw NumericalError("sign-convention error: Im M(k) <= 0");
  const double ratio = std::norm(M + cplx(0.0, k)) / (4.0 * k * M.imag());
  const double g = std::log(ratio) * k * k;
  if (g < -1e-12) throw NumericalError("sign-convention error: negative quasi-Szego integrand");
  return std::max(g, 0.0);
}

ContinuumQuasiSzego quasi_szego_continuum(std::span<const double> k, std::span<const cplx> M) {
  if (k.size() != M.size() || k.size() < 8) throw ValidationError("k grid and M samples mismatch");
  const double dk = k[1] - k[0];
  std::vector<double> g(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) g[i] = quasi_szego_integrand(k[i], M[i]);

  // Midpoint sum up to `count` samples plus C / k_max, where C is fitted so
  // that C (1/k_a - 1/k_max) reproduces the integral over the last half
  // [k_a, k_max]; averaging the integral suppresses oscillation in g k^2.
  auto estimate = [&](std::size_t count, double& tail) {
    double s = 0.0, upper = 0.0;
    const std::size_t from = count / 2;
    for (std::size_t i = 0; i < count; ++i) {
      s += g[i] * dk;
      if (i >= from) upper += g[i] * dk;
    }
    const double k_a = k[from] - 0.5 * dk;
    const double k_max = k[count - 1] + 0.5 * dk;
    tail = upper / (1.0 / k_a - 1.0 / k_max) / k_max;
    return s + tail;
  };
  ContinuumQuasiSzego out;
  double half_tail = 0.0;
  out.value = estimate(k.size(), out.tail);
  out.half_cutoff_value = estimate(k.size() / 2, half_tail);
  // g k^2 growing slower than k^(1/2) makes the integral finite.
  std::vector<double> gk2(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) gk2[i] = g[i] * k[i] * k[i];
  const double k_max = k.back() + 0.5 * dk;
  out.growth = envelope_growth(k, gk2, k_max);
  out.verdict = growth_verdict(out.growth);
  return out;
}

ConditionReport theorem_2_1_report(const ContinuumPotential& V, const ContinuumOptions& options) {
  ConditionReport report("theorem_2_1");
  const std::vector<double> bs = bound_states(V, options.bound_state_tolerance);

  ConditionEntry support;
  support.label = "weyl_support";
  support.value = static_cast<double>(bs.size());
  support.trace = bs;
  support.verdict = std::all_of(bs.begin(), bs.end(), [](double e) { return e < 0.0; }) ? Verdict::holds
                                                                                          : Verdict::fails;
  support.note = "essential spectrum [0, inf) plus negative eigenvalues";
  report.add(std::move(support));

  // (ii) local solubility from the transformed density on p >= 1.
  const double p_max = 2.0 * (options.q_max + 6.0);
  const auto np = static_cast<std::size_t>(std::llround((p_max - 1.0) / options.dp));
  std::vector<double> p(np + 1), st(np + 1);
  for (std::size_t j = 0; j <= np; ++j) {
    p[j] = 1.0 + options.dp * static_cast<double>(j);
    st[j] = 2.0 * p[j] * weyl_M(V, p[j]).imag() / pi;
  }
  const auto nq = static_cast<std::size_t>(std::llround(options.q_max / options.dp));
  std::vector<double> q(nq + 1);
  for (std::size_t i = 0; i <= nq; ++i) q[i] = options.dp * static_cast<double>(i);
  const FTilde ft = f_tilde(p, st, q);
  double integral = 0.0;
  for (std::size_t i = 1; i <= nq; ++i) {
    integral += 0.5 * options.dp * (ft.values[i - 1] * ft.values[i - 1] + ft.values[i] * ft.values[i]);
  }
  // |dsigma - dsigma_0| <= C p^alpha with alpha < 1/2 gives F = O(q^(alpha-1)),
  // which is square integrable; the envelope is read off the upper p range.
  std::vector<double> dsig(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) dsig[j] = st[j] - free_sigma_tilde(p[j]);
  const double alpha = envelope_growth(p, dsig, p_max);
  double tail_c = 0.0;  // max q |F| on the last half of the q range
  for (std::size_t i = nq / 2; i <= nq; ++i) tail_c = std::max(tail_c, q[i] * std::abs(ft.values[i]));
  ConditionEntry local;
  local.label = "local_solubility";
  local.value = integral;
  local.trace = {alpha, tail_c * tail_c / options.q_max};
  local.verdict = ft.cutoff_stable ? growth_verdict(alpha) : Verdict::inconclusive;
  local.note = "int |F|^2 dq over [0, " + std::to_string(options.q_max) +
               "]; trace: growth exponent of |dsigma - dsigma_0|, tail bound C^2/q_max";
  report.add(std::move(local));

  ConditionEntry lt;
  lt.label = "lieb_thirring";
  for (double e : bs) lt.value += std::pow(std::abs(e), 1.5);
  lt.verdict = std::isfinite(lt.value) ? Verdict::holds : Verdict::fails;
  lt.note = "sum |E_j|^(3/2)";
  report.add(std::move(lt));

  const auto nk = static_cast<std::size_t>(std::llround(options.k_max / options.dk));
  std::vector<double> k(nk);
  std::vector<cplx> M(nk);
  for (std::size_t i = 0; i < nk; ++i) {
    k[i] = options.dk * (static_cast<double>(i) + 0.5);
    M[i] = weyl_M(V, k[i]);
  }
  const ContinuumQuasiSzego qs = quasi_szego_continuum(k, M);
  ConditionEntry quasi;
  quasi.label = "quasi_szego";
  quasi.value = qs.value;
  quasi.trace = {qs.half_cutoff_value, qs.tail, qs.growth};
  quasi.verdict = qs.verdict;
  quasi.note = "int log(|M + ik|^2 / (4k Im M)) k^2 dk with C/k tail; trace: half-cutoff value, tail, "
               "growth exponent of the integrand times k^2";
  report.add(std::move(quasi));
  return report;
}

}  // namespace spectral
