#include "spectral/inverse.hpp"

#include "spectral/jost.hpp"
#include "spectral/mfunction.hpp"

#include <cmath>
#include <numeric>

namespace spectral {

PerturbedJacobi StieltjesResult::jacobi() const {
  if (degenerate) throw NumericalError("Stieltjes recursion degenerated: " + diagnostic);
  return PerturbedJacobi(a, b);
}

namespace {

double weighted_dot(std::span<const double> w, const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) s += w[k] * x[k] * y[k];
  return s;
}

}  // namespace

StieltjesResult stieltjes_discrete(std::span<const double> nodes, std::span<const double> weights,
                                   std::size_t n_max, double trim_tolerance) {
  if (nodes.size() != weights.size()) throw ValidationError("nodes and weights differ in length");
  const double mass = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(mass > 0.0)) throw ValidationError("measure must have positive mass");

  const std::size_t m = nodes.size();
  std::vector<std::vector<double>> p;
  p.reserve(n_max + 1);
  p.emplace_back(m, 1.0 / std::sqrt(mass));
  double scale = 0.0;
  for (std::size_t k = 0; k < m; ++k) scale += weights[k] * nodes[k] * nodes[k];
  scale /= mass;

  StieltjesResult out;
  double a_prev = 0.0;
  for (std::size_t n = 0; n < n_max; ++n) {
    const auto& pn = p[n];
    double b = 0.0;
    for (std::size_t k = 0; k < m; ++k) b += weights[k] * nodes[k] * pn[k] * pn[k];
    std::vector<double> q(m);
    for (std::size_t k = 0; k < m; ++k) {
      q[k] = (nodes[k] - b) * pn[k] - (n > 0 ? a_prev * p[n - 1][k] : 0.0);
    }
    // Two passes of classical Gram-Schmidt against all previous vectors.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j <= n; ++j) {
        const double c = weighted_dot(weights, q, p[j]);
        for (std::size_t k = 0; k < m; ++k) q[k] -= c * p[j][k];
      }
    }
    const double a2 = weighted_dot(weights, q, q);
    out.b.push_back(b);
    out.steps = n + 1;
    if (!(a2 > 1e-24 * std::max(scale, 1.0))) {
      out.degenerate = true;
      out.diagnostic = "a_" + std::to_string(n + 1) + "^2 = " + std::to_string(a2) +
                       " is not positive; the measure supports only " + std::to_string(n + 1) +
                       " orthonormal polynomials at this resolution";
      return out;
    }
    const double a = std::sqrt(a2);
    out.a.push_back(a);
    for (double& x : q) x /= a;
    p.push_back(std::move(q));
    a_prev = a;
  }
  trim_parameters(out.a, out.b, trim_tolerance);
  return out;
}

StieltjesResult stieltjes(const SpectralMeasure& measure, std::size_t n_max, double trim_tolerance) {
  if (n_max > 60) throw ValidationError("stieltjes supports n_max <= 60");
  const std::size_t g = measure.grid();
  std::vector<double> nodes;
  std::vector<double> weights;
  nodes.reserve(g + measure.points().size());
  weights.reserve(g + measure.points().size());
  const double dt = pi / static_cast<double>(g);
  for (std::size_t i = 0; i < g; ++i) {
    const double t = SpectralMeasure::theta(i, g);
    const double w = measure.density()[i] * 2.0 * std::sin(t) * dt;
    if (w > 0.0) {
      nodes.push_back(2.0 * std::cos(t));
      weights.push_back(w);
    }
  }
  for (const auto& pt : measure.points()) {
    nodes.push_back(pt.energy);
    weights.push_back(pt.weight);
  }
  return stieltjes_discrete(nodes, weights, n_max, trim_tolerance);
}

PerturbedJacobi stieltjes_reconstruct(const SpectralMeasure& measure, std::size_t n_max) {
  return stieltjes(measure, n_max).jacobi();
}

MeasureFromL measure_from_L(const RealPolynomial& L, std::size_t grid) {
  if (grid < 16) throw ValidationError("measure_from_L requires G >= 16");
  if (L.is_zero() || std::abs(L.coefficient(0) - 1.0) > 1e-12) {
    throw ValidationError("perturbation determinant must satisfy L(0) = 1");
  }
  const DiskZeros zeros = locate_disk_zeros(L);
  if (!zeros.complex_in_closed_disk.empty()) {
    throw ValidationError("L has a non-real zero in the closed unit disk");
  }
  if (zeros.repeated) throw ValidationError("L has a repeated zero in the closed unit disk");

  std::vector<double> density(grid);
  for (std::size_t i = 0; i < grid; ++i) {
    const double t = SpectralMeasure::theta(i, grid);
    density[i] = std::sin(t) / (pi * std::norm(L(std::polar(1.0, t))));
  }
  const RealPolynomial dL = L.derivative();
  std::vector<PointMass> points;
  for (double z : zeros.real_in_disk) {
    const double denom = dL(z) * L(1.0 / z);
    if (denom == 0.0) throw ValidationError("degenerate canonical weight: L(1/z_k) = 0");
    const double w = (1.0 - 1.0 / (z * z)) * (z - 1.0 / z) / denom;
    if (!(w > 0.0)) {
      throw ValidationError("invalid L: canonical weight at z = " + std::to_string(z) + " is not positive");
    }
    points.push_back({z + 1.0 / z, w});
  }
  const SpectralMeasure unscaled(points, density);
  const double scale = 1.0 / unscaled.total_mass();
  for (double& f : density) f *= scale;
  for (auto& pt : points) pt.weight *= scale;
  return {SpectralMeasure(std::move(points), std::move(density)), scale};
}

Reconstruction reconstruct_from_L(const RealPolynomial& L, const ReconstructOptions& options) {
  const MeasureFromL m = measure_from_L(L, options.grid);
  Reconstruction out;
  out.scale = m.scale;
  out.jacobi = stieltjes(m.measure, options.n_max).jacobi();
  if (static_cast<int>(out.jacobi.size()) > std::max(L.degree(), 0)) {
    throw NumericalError("reconstruction failure: rank " + std::to_string(out.jacobi.size()) +
                         " exceeds deg L = " + std::to_string(L.degree()));
  }
  out.determinant_deviation = jost_data(out.jacobi).L.max_coefficient_deviation(L);
  if (out.determinant_deviation > options.tolerance) {
    throw NumericalError("reconstruction failure: determinant round trip deviates by " +
                         std::to_string(out.determinant_deviation));
  }
  return out;
}

double roundtrip_check(const PerturbedJacobi& jacobi, std::size_t grid, std::size_t n_max) {
  const SpectralMeasure measure = ac_density(jacobi, grid);
  const PerturbedJacobi back = stieltjes_reconstruct(measure, std::max(n_max, jacobi.size() + 1));
  return jacobi.max_deviation(back);
}

}  // namespace spectral
