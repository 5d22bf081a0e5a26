#pragma once

// Half-line Schrodinger operators -d^2/dx^2 + V with V compactly supported
// on [0, X]: Jost boundary data, Weyl m-function, bound states, the
// transformed spectral density and the local-solubility transform.

#include "spectral/core.hpp"

#include <filesystem>
#include <span>
#include <vector>

namespace spectral {

/// V sampled at x_i = i h, i = 0..n-1, X = (n-1) h, linearly interpolated;
/// V(x) = 0 for x > X.
class ContinuumPotential {
 public:
  ContinuumPotential(std::vector<double> samples, double h);

  /// Constant depth on [0, width]: samples -depth on the grid of step h.
  static ContinuumPotential well(double depth, double width, double h);
  static ContinuumPotential zero(double X = 1.0, double h = 1e-2);

  std::span<const double> samples() const { return samples_; }
  double h() const { return h_; }
  double X() const { return h_ * static_cast<double>(samples_.size() - 1); }
  /// Right end of the region where V is not identically zero (0 when V = 0).
  double effective_support() const;

  double operator()(double x) const;
  double min() const;
  double max_abs() const;

 private:
  std::vector<double> samples_;
  double h_;
};

/// CSV rows "x,V" on a uniform grid starting at 0 (an optional header row is
/// skipped).
ContinuumPotential read_potential_csv(const std::filesystem::path& path);

struct JostOdeOptions {
  /// RK4 step; 0 selects min(h, phase_step / sqrt(max |V - z|)).
  double step = 0.0;
  double phase_step = 0.01;
  bool check_resolution = true;
  double resolution_tolerance = 1e-6;
};

struct JostBoundary {
  cplx u;
  cplx du;
  double step = 0.0;  // step of the returned integration
  double resolution = 0.0;  // step-halving relative change, 0 when unchecked
};

/// Integrates -u'' + V u = z u from X down to 0 with u(X) = exp(i sqrt(z) X),
/// Im sqrt(z) >= 0. With the resolution check the result is from the
/// halved step; disagreement above the tolerance throws NumericalError.
JostBoundary solve_jost_ode(const ContinuumPotential& V, cplx z, const JostOdeOptions& options = {});

/// m(z) = u'(0) / u(0); throws NumericalError when u(0) vanishes.
cplx weyl_m(const ContinuumPotential& V, cplx z, const JostOdeOptions& options = {});
/// M(k) = m(k^2) on the outgoing-wave boundary.
cplx weyl_M(const ContinuumPotential& V, double k, const JostOdeOptions& options = {});

/// Negative eigenvalues, increasing, each bracketed to `tolerance`. The
/// scan is cross-checked against the node count of the zero-energy solution.
std::vector<double> bound_states(const ContinuumPotential& V, double tolerance = 1e-12);

struct ContinuumSpectralData {
  std::vector<double> bound_states;
  std::vector<double> k;
  std::vector<cplx> M;
};

/// Bound states plus M(k) at the requested k > 0.
ContinuumSpectralData spectral_data(const ContinuumPotential& V, std::span<const double> k,
                                    double bound_state_tolerance = 1e-12);

/// rho'(k^2) samples -> 2 k rho'(k^2).
std::vector<double> sigma_tilde_transform(std::span<const double> k, std::span<const double> rho_density);
/// 2 p^2 / pi.
inline double free_sigma_tilde(double p) { return 2.0 * p * p / pi; }

struct FTilde {
  std::vector<double> q;
  std::vector<double> values;
  double cutoff_change = 0.0;  // max change between cutoff P/2 and P
  bool cutoff_stable = true;
};

/// F(q) = pi^(-1/2) int_{p >= 1} p^-1 exp(-(q-p)^2) [dsigma - dsigma_0] by the
/// trapezoid rule on the uniform grid p (starting at 1), Gaussian cut at 8
/// standard deviations.
FTilde f_tilde(std::span<const double> p, std::span<const double> sigma_tilde, std::span<const double> q);

struct ContinuumQuasiSzego {
  double value = 0.0;  // quadrature plus tail
  double tail = 0.0;
  double half_cutoff_value = 0.0;
  double growth = 0.0;  // envelope growth exponent of the integrand times k^2
  Verdict verdict = Verdict::holds;
};

/// log(|M + ik|^2 / (4 k Im M)) k^2 on midpoint samples k_i; the tail beyond
/// k_max is fitted as C / k^2. Finiteness is certified when the envelope of
/// the integrand times k^2 grows slower than k^(1/2) across the last octave below k_max.
/// Negative integrand below -1e-12 throws NumericalError.
ContinuumQuasiSzego quasi_szego_continuum(std::span<const double> k, std::span<const cplx> M);
/// Pointwise integrand, exposed for diagnostics.
double quasi_szego_integrand(double k, cplx M);

struct ContinuumOptions {
  double k_max = 40.0;
  double dk = 0.02;
  double q_max = 20.0;
  double dp = 0.02;
  double bound_state_tolerance = 1e-12;
};

/// (i) weyl_support, (ii) local_solubility, (iii) lieb_thirring,
/// (iv) quasi_szego.
ConditionReport theorem_2_1_report(const ContinuumPotential& V, const ContinuumOptions& options = {});

}  // namespace spectral
