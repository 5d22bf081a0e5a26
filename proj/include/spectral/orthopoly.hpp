#pragma once

// Orthonormal polynomials from the three-term recursion and detection of
// Szego asymptotics lim z^n p_n(z + 1/z).

#include "spectral/core.hpp"

#include <vector>

namespace spectral {

/// v = phase * exp(log_magnitude); zero is flagged explicitly.
struct ScaledValue {
  double log_magnitude = 0.0;
  cplx phase = 1.0;
  bool zero = false;

  static ScaledValue from(cplx v);
  /// May overflow to inf for huge magnitudes.
  cplx value() const;
};

/// Distance |log v - log w| with the phase difference taken in (-pi, pi];
/// infinite when either value is zero.
double log_distance(const ScaledValue& v, const ScaledValue& w);

/// p_0(E), ..., p_{n_max}(E).
std::vector<ScaledValue> eval_pn(const PerturbedJacobi& jacobi, cplx energy, std::size_t n_max);

/// s_n = z^n p_n(z + 1/z), n = 0..n_max, by recursing on s_n directly.
/// Throws ValidationError unless 0 < |z| < 1.
std::vector<ScaledValue> szego_sequence(const SequenceRule& rule, cplx z, std::size_t n_max);
std::vector<ScaledValue> szego_sequence(const PerturbedJacobi& jacobi, cplx z, std::size_t n_max);

/// Partial-sum report for the square-summability, log a_n and b_n sums over
/// n <= N, using windows N/8, N/4, N/2, N. Requires N >= 100.
ConditionReport check_hypotheses(const SequenceRule& rule, std::size_t n, double tolerance);

struct SzegoOptions {
  std::size_t base_n = 12500;  // first window endpoint
  std::size_t windows = 3;     // endpoints base_n * 2^k, k = 0..windows
  double tolerance = 1e-3;     // on the log-scale Cauchy increment
};

struct SzegoDetection {
  cplx z;
  Verdict converged = Verdict::inconclusive;
  ScaledValue limit;  // value at the last window endpoint
  DyadicTest test;
};

/// Dyadic Cauchy test on log s_n at every grid point; requires |z| <= 0.95.
std::vector<SzegoDetection> detect_szego_asymptotics(const SequenceRule& rule,
                                                     const std::vector<cplx>& z_grid,
                                                     const SzegoOptions& options = {});

}  // namespace spectral
