#pragma once

// Forward spectral map: m(E) = <delta_1, (J - E)^-1 delta_1> and its disk
// transplant M(z) = -m(z + 1/z), evaluated by the backward continued fraction
// seeded with the exact free-tail value m_0 = -z.

#include "spectral/core.hpp"

#include <vector>

namespace spectral {

/// Continued-fraction denominator fell below the pole-hit threshold.
class PoleHitError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// M-function of the free operator: M_0(z) = z on the closed disk.
inline cplx free_M(cplx z) { return z; }

/// Exact continued fraction of depth N. Valid on the closed unit disk
/// (boundary values are the radial limits). Throws PoleHitError when a
/// denominator drops below 1e-14 in modulus.
cplx eval_M(const PerturbedJacobi& jacobi, cplx z);

/// m(E) for E = z + 1/z with |z| <= 1.
inline cplx eval_m(const PerturbedJacobi& jacobi, cplx z) { return -eval_M(jacobi, z); }

class MFunctionEvaluator {
 public:
  explicit MFunctionEvaluator(PerturbedJacobi jacobi) : jacobi_(std::move(jacobi)) {}
  cplx operator()(cplx z) const { return eval_M(jacobi_, z); }
  const PerturbedJacobi& jacobi() const { return jacobi_; }

 private:
  PerturbedJacobi jacobi_;
};

/// J^(1): first row and column removed.
PerturbedJacobi strip(const PerturbedJacobi& jacobi);

struct Eigenvalue {
  double energy;     // z + 1/z, |E| > 2
  double z;          // zero of the Jost function in (-1, 1) \ {0}
  double residual;   // |u(z)| relative to the coefficient scale
  bool converged;    // residual below the requested tolerance
};

/// Discrete spectrum off [-2, 2] from the real zeros of the Jost polynomial
/// inside the disk, sorted by energy.
std::vector<Eigenvalue> eigenvalues_outside(const PerturbedJacobi& jacobi, double tol = 1e-10);

/// Im M(e^{i theta_i}) on the midpoint grid theta_i = pi (i + 1/2) / G.
std::vector<double> boundary_im_M(const PerturbedJacobi& jacobi, std::size_t grid);

/// Full spectral measure: f_i = Im M(e^{i theta_i}) / pi plus point masses
/// w_j = residue (1 - z_j^-2) from the canonical residues. Requires G >= 16.
SpectralMeasure ac_density(const PerturbedJacobi& jacobi, std::size_t grid);

}  // namespace spectral
