#pragma once

// Domain types shared by every module: half-line Jacobi operators with an
// exact free tail, parameter families, spectral measures on the theta grid,
// real polynomials and condition reports.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spectral {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

/// Input violates a documented precondition or type invariant.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure could not deliver its contract (pole hit,
/// under-resolution, failed polishing, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Verdict { holds, fails, inconclusive, not_applicable };

std::string_view to_string(Verdict v);

// ---------------------------------------------------------------------------

/// Jacobi matrix with finitely many perturbed entries. Beyond index N the
/// parameters are exactly a_n = 1, b_n = 0. Indices are 1-based as in the
/// operator itself; a_n couples sites n and n+1.
class PerturbedJacobi {
 public:
  PerturbedJacobi() = default;

  /// Validates (equal lengths, a_n > 0, finite entries) and trims trailing
  /// free pairs.
  PerturbedJacobi(std::vector<double> a, std::vector<double> b);

  static PerturbedJacobi free() { return {}; }

  std::size_t size() const { return a_.size(); }
  bool is_free() const { return a_.empty(); }

  double a(std::size_t n) const { return (n >= 1 && n <= a_.size()) ? a_[n - 1] : 1.0; }
  double b(std::size_t n) const { return (n >= 1 && n <= b_.size()) ? b_[n - 1] : 0.0; }

  std::span<const double> a_values() const { return a_; }
  std::span<const double> b_values() const { return b_; }

  /// Product of all a_n (finite because the tail is exact).
  double product_a() const;

  /// max_n max(|a_n - a'_n|, |b_n - b'_n|) over the union of supports.
  double max_deviation(const PerturbedJacobi& other) const;

  bool operator==(const PerturbedJacobi&) const = default;

 private:
  std::vector<double> a_;
  std::vector<double> b_;
};

/// Removes trailing (a, b) pairs within `tolerance` of (1, 0).
void trim_parameters(std::vector<double>& a, std::vector<double>& b, double tolerance = 0.0);

/// Canonical form; the constructor already trims, so this is idempotent.
PerturbedJacobi trim(const PerturbedJacobi& jacobi);

// ---------------------------------------------------------------------------

enum class RuleKind { finite, power, alternating, exponential };
enum class RuleTarget { a, b };

/// Closed-form generator for infinite parameter families.
///   finite:       the parameters of a PerturbedJacobi
///   power:        b_n = c n^-gamma (target b) or a_n = 1 + c n^-gamma (target a)
///   alternating:  b_n = c (-1)^n n^-gamma
///   exponential:  b_n = c r^n, 0 < r < 1
class SequenceRule {
 public:
  static SequenceRule finite(PerturbedJacobi jacobi);
  static SequenceRule power(double c, double gamma, RuleTarget target);
  static SequenceRule alternating(double c, double gamma);
  static SequenceRule exponential(double c, double r);

  RuleKind kind() const { return kind_; }
  RuleTarget target() const { return target_; }
  double c() const { return c_; }
  double gamma() const { return gamma_; }
  double r() const { return r_; }
  const PerturbedJacobi& jacobi() const { return jacobi_; }

  /// (a_n, b_n) for n >= 1.
  std::pair<double, double> operator()(std::size_t n) const;

  /// log(|a_n - 1| + |b_n|), evaluated analytically so it stays finite where
  /// the deviation itself underflows. -inf when the entry is free.
  double log_deviation(std::size_t n) const;

  /// Index of the last perturbed entry for finite rules.
  std::optional<std::size_t> support() const;

  /// Operator with entries 1..n from the rule and a free tail afterwards.
  PerturbedJacobi truncate(std::size_t n) const;

 private:
  RuleKind kind_ = RuleKind::finite;
  RuleTarget target_ = RuleTarget::b;
  double c_ = 0.0;
  double gamma_ = 0.0;
  double r_ = 0.0;
  PerturbedJacobi jacobi_;
};

// ---------------------------------------------------------------------------

struct PointMass {
  double energy;
  double weight;
};

/// Point masses off [-2, 2] plus the a.c. density sampled on the midpoint
/// grid theta_i = pi (i + 1/2) / G, f_i = f(2 cos theta_i).
class SpectralMeasure {
 public:
  SpectralMeasure() = default;
  SpectralMeasure(std::vector<PointMass> points, std::vector<double> density);

  std::span<const PointMass> points() const { return points_; }
  std::span<const double> density() const { return density_; }
  std::size_t grid() const { return density_.size(); }

  static double theta(std::size_t i, std::size_t grid) {
    return pi * (static_cast<double>(i) + 0.5) / static_cast<double>(grid);
  }

  double point_mass() const;
  /// Integral of f over [-2, 2] by the midpoint rule in theta.
  double density_mass() const;
  double total_mass() const { return point_mass() + density_mass(); }

 private:
  std::vector<PointMass> points_;
  std::vector<double> density_;
};

// ---------------------------------------------------------------------------

/// Polynomial with real coefficients in ascending degree. Trailing exact
/// zeros are dropped, so the zero polynomial has no coefficients.
class RealPolynomial {
 public:
  RealPolynomial() = default;
  explicit RealPolynomial(std::vector<double> coefficients);

  static RealPolynomial constant(double c) { return RealPolynomial({c}); }
  /// z^k
  static RealPolynomial monomial(std::size_t k, double c = 1.0);

  std::span<const double> coefficients() const { return c_; }
  double coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : 0.0; }
  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }

  double operator()(double x) const;
  cplx operator()(cplx z) const;

  RealPolynomial derivative() const;

  RealPolynomial operator+(const RealPolynomial& rhs) const;
  RealPolynomial operator-(const RealPolynomial& rhs) const;
  RealPolynomial operator*(const RealPolynomial& rhs) const;
  RealPolynomial operator*(double s) const;

  /// All complex roots (companion-matrix eigenvalues, Newton-polished).
  std::vector<cplx> roots() const;

  /// max_k |c_k - c'_k| with zero padding.
  double max_coefficient_deviation(const RealPolynomial& other) const;

 private:
  std::vector<double> c_;
};

// ---------------------------------------------------------------------------

struct ConditionEntry {
  std::string label;
  double value = 0.0;
  std::vector<double> trace;
  Verdict verdict = Verdict::inconclusive;
  std::string note;
};

class ConditionReport {
 public:
  explicit ConditionReport(std::string title) : title_(std::move(title)) {}

  /// Throws if the label was already recorded.
  void add(ConditionEntry entry);

  const std::string& title() const { return title_; }
  std::span<const ConditionEntry> entries() const { return entries_; }
  const ConditionEntry& at(std::string_view label) const;

  /// True when every entry holds (not_applicable entries are neutral).
  bool all_hold() const;

 private:
  std::string title_;
  std::vector<ConditionEntry> entries_;
};

// ---------------------------------------------------------------------------

/// Outcome of a dyadic-window convergence test on a scalar sequence.
struct DyadicTest {
  Verdict verdict = Verdict::inconclusive;
  std::vector<double> values;      // sequence at the window endpoints
  std::vector<double> increments;  // |v_{k+1} - v_k|
  double decay_ratio = 0.0;        // geometric mean ratio of increments
};

struct DyadicOptions {
  double tolerance = 1e-8;
  double divergence_cap = 1e6;
  /// Increments shrinking by at most this factor per window count as
  /// divergence (at least logarithmic growth).
  double stall_ratio = 0.95;
  /// When set, increments shrinking geometrically at least this fast count
  /// as convergence even above `tolerance`.
  std::optional<double> geometric_ratio;
};

/// Classifies window endpoint values v_0..v_K (K >= 1).
DyadicTest dyadic_test(std::vector<double> values, const DyadicOptions& options);

/// Same classification from precomputed window increments; `magnitude` is
/// compared against the divergence cap.
DyadicTest classify_increments(std::vector<double> increments, double magnitude,
                               const DyadicOptions& options);

}  // namespace spectral
