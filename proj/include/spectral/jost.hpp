#pragma once

// Jost solutions, Jost function u(z) and perturbation determinant L(z),
// Blaschke/outer factorization of u from boundary data, canonical weights and
// decay/analyticity diagnostics.

#include "spectral/core.hpp"

#include <limits>
#include <vector>

namespace spectral {

struct JostData {
  RealPolynomial u;  // Jost function u(z) = u_0(z)
  RealPolynomial L;  // perturbation determinant, L = prod_a * u
  double prod_a = 1.0;
  std::vector<double> zeros_in_disk;   // real, simple, 0 < |z| < 1, ascending
  std::vector<double> boundary_zeros;  // subset of {-1, +1}
};

struct JostSolution {
  JostData data;
  /// u_n(z) for n = 0..N+1; u_n(z) = z^n for n > N.
  std::vector<RealPolynomial> u_n;
};

/// Backward recurrence a_n u_{n+1} + (b_n - z - 1/z) u_n + a_{n-1} u_{n-1} = 0
/// from u_n = z^n beyond the support, with a_0 = 1. Exact polynomial
/// arithmetic; deg u <= 2N.
JostSolution jost_solution(const PerturbedJacobi& jacobi);

inline JostData jost_data(const PerturbedJacobi& jacobi) { return jost_solution(jacobi).data; }

/// Location of the zeros of a real polynomial relative to the closed disk.
struct DiskZeros {
  std::vector<double> real_in_disk;     // polished, ascending
  std::vector<double> boundary;         // zeros at -1 or +1
  std::vector<cplx> complex_in_closed_disk;
  bool repeated = false;                // some zero in the closed disk is not simple
};

DiskZeros locate_disk_zeros(const RealPolynomial& p);

/// det(I + dJ G_0(E(z))) over the perturbed block, with the free kernel
/// G_0(n, m) = -(z^|n-m| - z^(n+m)) / (1/z - z). Throws near z = +-1.
cplx perturbation_determinant(const PerturbedJacobi& jacobi, cplx z);

/// (|z_k| / z_k) (z_k - z) / (1 - z_k z): unimodular on |z| = 1, zero at
/// z_k, positive at the origin.
cplx blaschke(cplx z, double z_k);

struct FactorizationOptions {
  double radius = 0.9;            // circle on which u is sampled
  std::size_t coefficients = 64;  // number of Taylor coefficients recovered
};

/// u(z) = prod_k b(z, z_k) exp( int (e^{it} + z)/(e^{it} - z) log(sin t / Im M(e^{it})) dt / 4pi )
/// with Im M given on the half grid theta_i = pi (i + 1/2) / G and reflected
/// to the full circle. Taylor coefficients are recovered by a discrete
/// Fourier transform on |z| = radius. Throws NumericalError when Im M is
/// not positive on the grid.
RealPolynomial jost_from_measure(std::span<const double> im_M, std::span<const double> zeros_in_disk,
                                 const FactorizationOptions& options = {});

/// Same, reading Im M = pi f and the zeros from a measure.
RealPolynomial jost_from_measure(const SpectralMeasure& measure,
                                 const FactorizationOptions& options = {});

/// (z0 - 1/z0) / (u'(z0) u(1/z0)); throws NumericalError when u(1/z0) = 0.
double canonical_value(const RealPolynomial& u, double z0);

/// lim (z - z0) M(z) along z0 - sign(z0) 10^-k, k = 2..6, extrapolated to
/// zero step by polynomial (Neville) extrapolation.
double residue_of_M(const PerturbedJacobi& jacobi, double z0);

struct CanonicalWeight {
  double residue = 0.0;
  double canonical = 0.0;
  double relative_difference = 0.0;
  bool pass = false;
};

CanonicalWeight canonical_weight_check(const PerturbedJacobi& jacobi, double z0, double tol);

struct DecayEstimate {
  double r_hat = 1.0;  // +inf for finite rank
  bool infinite = false;
  std::vector<std::pair<std::size_t, double>> trace;  // (n, (|a_n-1|+|b_n|)^(1/2n))
};

/// R_hat = 1 / max over n in [n_max/2, n_max] of (|a_n - 1| + |b_n|)^(1/2n).
DecayEstimate decay_rate(const SequenceRule& rule, std::size_t n_max);

struct RadiusEstimate {
  double radius = std::numeric_limits<double>::infinity();
  bool infinite = true;
  std::size_t significant = 0;  // coefficients above the noise floor
};

/// Cauchy-Hadamard estimate 1 / max |c_n|^(1/n) over the tail window (second
/// half) of the coefficients above a relative noise floor of 1e-13.
RadiusEstimate analyticity_radius(std::span<const double> coefficients);
/// Polynomials are entire.
RadiusEstimate analyticity_radius(const RealPolynomial& p);

/// int |u(R1 e^{it}) - u(0)|^2 dt / 2pi by the midpoint rule over samples.
double triple_norm_squared(std::span<const cplx> samples, cplx u0);
/// Samples p on |z| = r1 at G midpoint nodes.
double triple_norm_squared(const RealPolynomial& p, double r1, std::size_t grid);

/// Finite-rank characterization: rational M with simple real poles, u is a
/// polynomial, canonical weight at every disk pole.
ConditionReport theorem_4_1_report(const PerturbedJacobi& jacobi, double tol = 1e-6);

struct ExponentialDecayOptions {
  std::size_t truncation = 200;  // rule entries kept when building u
  std::size_t decay_window = 500;
  double radius_tolerance = 0.05;
  double canonical_tolerance = 1e-6;
};

/// Exponential-decay characterization for a rule, evaluated on its
/// truncation: decay estimate R_hat, meromorphy (simple real poles),
/// analyticity radius of u against R_hat, canonical weights at disk poles
/// with 1/R_hat < |z| < 1.
ConditionReport theorem_4_2_report(const SequenceRule& rule, const ExponentialDecayOptions& options = {});

}  // namespace spectral
