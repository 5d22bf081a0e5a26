#pragma once

// Inverse spectral maps: measure -> Jacobi parameters by the Stieltjes
// (Gram-Schmidt) procedure, and perturbation determinant -> the unique
// finite-rank operator having it.

#include "spectral/core.hpp"

#include <string>
#include <vector>

namespace spectral {

struct StieltjesResult {
  std::vector<double> a;  // a_1..a_k, trimmed of the free tail
  std::vector<double> b;  // b_1..b_k (one more b than a when degenerate)
  bool degenerate = false;
  std::string diagnostic;
  std::size_t steps = 0;

  /// Throws NumericalError when the recursion degenerated.
  PerturbedJacobi jacobi() const;
};

/// Stieltjes procedure on a discrete measure sum_k weights_k delta(x - nodes_k),
/// with full re-orthogonalization.
StieltjesResult stieltjes_discrete(std::span<const double> nodes, std::span<const double> weights,
                                   std::size_t n_max, double trim_tolerance = 1e-10);

/// Inner products by midpoint quadrature in theta plus the point masses.
/// Requires positive mass and n_max <= 60.
StieltjesResult stieltjes(const SpectralMeasure& measure, std::size_t n_max, double trim_tolerance = 1e-10);

/// Convenience: stieltjes(...).jacobi().
PerturbedJacobi stieltjes_reconstruct(const SpectralMeasure& measure, std::size_t n_max);

struct MeasureFromL {
  SpectralMeasure measure;
  double scale = 1.0;  // c = (prod a_n)^2 of the reconstructed operator
};

/// Checks L(0) = 1 and that every zero in the closed disk is real and
/// simple; then builds f_c = c sin(t) / (pi |L(e^{it})|^2) and canonical masses
/// at z_k + 1/z_k, fixing c by unit total mass. Throws ValidationError on any
/// violated condition, including a non-positive weight.
MeasureFromL measure_from_L(const RealPolynomial& L, std::size_t grid = 4096);

struct ReconstructOptions {
  std::size_t n_max = 30;
  std::size_t grid = 4096;
  double tolerance = 1e-8;  // coefficientwise determinant round trip
};

struct Reconstruction {
  PerturbedJacobi jacobi;
  double scale = 1.0;
  double determinant_deviation = 0.0;  // max |L_k - L'_k|
};

/// measure_from_L followed by the Stieltjes procedure; verifies finite rank
/// (N <= deg L) and that the recomputed determinant reproduces L.
Reconstruction reconstruct_from_L(const RealPolynomial& L, const ReconstructOptions& options = {});

/// max |J - stieltjes(ac_density(J))| over all parameters.
double roundtrip_check(const PerturbedJacobi& jacobi, std::size_t grid = 4096, std::size_t n_max = 30);

}  // namespace spectral
