#include "spectral/mfunction.hpp"

#include "spectral/jost.hpp"

#include <algorithm>
#include <cmath>

namespace spectral {

cplx eval_M(const PerturbedJacobi& jacobi, cplx z) {
  // m^(k-1) = 1 / (b_k - E - a_k^2 m^(k)); multiplied through by z so that
  // z = 0 is regular: m^(k-1) = z / (b_k z - z^2 - 1 - a_k^2 z m^(k)).
  cplx m = -z;
  for (std::size_t k = jacobi.size(); k >= 1; --k) {
    const double a = jacobi.a(k);
    const cplx denom = jacobi.b(k) * z - z * z - 1.0 - a * a * z * m;
    if (std::abs(denom) < 1e-14) {
      throw PoleHitError("continued fraction hit a pole of M");
    }
    m = z / denom;
  }
  return -m;
}

PerturbedJacobi strip(const PerturbedJacobi& jacobi) {
  if (jacobi.is_free()) return jacobi;
  const auto a = jacobi.a_values();
  const auto b = jacobi.b_values();
  return PerturbedJacobi(std::vector<double>(a.begin() + 1, a.end()),
                         std::vector<double>(b.begin() + 1, b.end()));
}

std::vector<Eigenvalue> eigenvalues_outside(const PerturbedJacobi& jacobi, double tol) {
  if (!(tol > 0.0)) throw ValidationError("eigenvalues_outside requires tol > 0");
  const JostData data = jost_data(jacobi);
  std::vector<Eigenvalue> out;
  const auto coeffs = data.u.coefficients();
  for (double z : data.zeros_in_disk) {
    double scale = 0.0;
    double power = 1.0;
    for (double c : coeffs) {
      scale += std::abs(c) * power;
      power *= std::abs(z);
    }
    const double residual = std::abs(data.u(z)) / scale;
    out.push_back({z + 1.0 / z, z, residual, residual < tol});
  }
  std::sort(out.begin(), out.end(),
            [](const Eigenvalue& x, const Eigenvalue& y) { return x.energy < y.energy; });
  return out;
}

std::vector<double> boundary_im_M(const PerturbedJacobi& jacobi, std::size_t grid) {
  std::vector<double> im(grid);
  for (std::size_t i = 0; i < grid; ++i) {
    const double t = SpectralMeasure::theta(i, grid);
    im[i] = eval_M(jacobi, std::polar(1.0, t)).imag();
  }
  return im;
}

SpectralMeasure ac_density(const PerturbedJacobi& jacobi, std::size_t grid) {
  if (grid < 16) throw ValidationError("ac_density requires G >= 16");
  std::vector<double> f = boundary_im_M(jacobi, grid);
  for (double& x : f) {
    // Im M = sin(theta) / |u|^2 > 0; only rounding can push it below zero.
    if (x < -1e-12) throw NumericalError("negative boundary value of Im M");
    x = std::max(x, 0.0) / pi;
  }
  const JostData data = jost_data(jacobi);
  std::vector<PointMass> points;
  for (double z : data.zeros_in_disk) {
    const double residue = canonical_value(data.u, z);
    points.push_back({z + 1.0 / z, residue * (1.0 - 1.0 / (z * z))});
  }
  return SpectralMeasure(std::move(points), std::move(f));
}

}  // namespace spectral
