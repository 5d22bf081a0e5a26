#pragma once

// Scalar conditions on both sides of the Hilbert-Schmidt sum-rule equivalence and the
// Szego-type integrals, all evaluated in the theta variable E = 2 cos(theta).

#include "spectral/core.hpp"

#include <functional>
#include <vector>

namespace spectral {

struct SumEstimate {
  double value = 0.0;
  Verdict verdict = Verdict::holds;  // fails signals divergence
  std::string note;
};

/// sum (a_n - 1)^2 + b_n^2.
double hs_norm_sq(const PerturbedJacobi& jacobi);
/// Partial sum to n_terms plus a closed-form integral tail bound; divergent
/// families (power decay with gamma <= 1/2) report value = inf, fails.
SumEstimate hs_norm_sq(const SequenceRule& rule, std::size_t n_terms = 100000);

/// sum_j (|E_j| - 2)^(3/2).
double lieb_thirring_32(const SpectralMeasure& measure);
/// sum_j (|E_j| - 2)^(1/2).
double half_power_sum(const SpectralMeasure& measure);

/// f(2 cos theta) as a function of theta in (0, pi).
using DensityFunction = std::function<double(double)>;

struct IntegralEstimate {
  double value = 0.0;   // finest-grid value, -inf when divergent
  Verdict verdict = Verdict::holds;
  std::vector<double> refinements;  // one value per grid level
  std::string note;
};

/// int log f(E) sqrt(4 - E^2) dE = int_0^pi log f(2 cos t) 4 sin^2 t dt on
/// the measure's own grid; any vanishing sample gives -inf.
IntegralEstimate quasi_szego(const SpectralMeasure& measure);
/// Same integral at G, 2G, ..., 2^(levels-1) G; -inf is reported when the
/// refinements keep decreasing without settling.
IntegralEstimate quasi_szego(const DensityFunction& density, std::size_t grid, std::size_t levels = 3,
                             double tolerance = 1e-6);

/// int log f(E) dE / sqrt(4 - E^2) = int_0^pi log f(2 cos t) dt.
IntegralEstimate szego_integral(const SpectralMeasure& measure);
IntegralEstimate szego_integral(const DensityFunction& density, std::size_t grid, std::size_t levels = 3,
                                double tolerance = 1e-6);

struct KillipSimonOptions {
  std::size_t grid = 2048;
  double mass_tolerance = 1e-8;
};

/// Both sides of the Hilbert-Schmidt characterization for a finite-rank J:
/// support structure, normalization, Lieb-Thirring sum, quasi-Szego
/// integral, and the Hilbert-Schmidt norm itself. Normalization and the
/// quasi-Szego integral use adaptive Gauss-Kronrod on `grid` panels, split
/// further around Jost zeros near the circle (sharp resonance peaks of f).
ConditionReport killip_simon_report(const PerturbedJacobi& jacobi, const KillipSimonOptions& options = {});

}  // namespace spectral
