#include "spectral/core.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace spectral {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::not_applicable: return "not_applicable";
  }
  return "inconclusive";
}

// --- PerturbedJacobi -------------------------------------------------------

void trim_parameters(std::vector<double>& a, std::vector<double>& b, double tolerance) {
  while (!a.empty() && std::abs(a.back() - 1.0) <= tolerance && std::abs(b.back()) <= tolerance) {
    a.pop_back();
    b.pop_back();
  }
}

PerturbedJacobi::PerturbedJacobi(std::vector<double> a, std::vector<double> b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.size() != b_.size()) {
    throw ValidationError("a and b must have the same length");
  }
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (!std::isfinite(a_[i]) || !std::isfinite(b_[i])) {
      throw ValidationError("Jacobi parameters must be finite");
    }
    if (!(a_[i] > 0.0)) {
      throw ValidationError("a must be positive");
    }
  }
  trim_parameters(a_, b_);
}

double PerturbedJacobi::product_a() const {
  double p = 1.0;
  for (double x : a_) p *= x;
  return p;
}

double PerturbedJacobi::max_deviation(const PerturbedJacobi& other) const {
  const std::size_t n = std::max(size(), other.size());
  double dev = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    dev = std::max({dev, std::abs(a(k) - other.a(k)), std::abs(b(k) - other.b(k))});
  }
  return dev;
}

PerturbedJacobi trim(const PerturbedJacobi& jacobi) {
  std::vector<double> a(jacobi.a_values().begin(), jacobi.a_values().end());
  std::vector<double> b(jacobi.b_values().begin(), jacobi.b_values().end());
  return PerturbedJacobi(std::move(a), std::move(b));
}

// --- SequenceRule ----------------------------------------------------------

SequenceRule SequenceRule::finite(PerturbedJacobi jacobi) {
  SequenceRule rule;
  rule.kind_ = RuleKind::finite;
  rule.jacobi_ = std::move(jacobi);
  return rule;
}

SequenceRule SequenceRule::power(double c, double gamma, RuleTarget target) {
  if (!std::isfinite(c) || !std::isfinite(gamma) || gamma <= 0.0) {
    throw ValidationError("power rule requires finite c and gamma > 0");
  }
  // n^-gamma <= 1, so 1 + c > 0 keeps every a_n positive.
  if (target == RuleTarget::a && !(1.0 + c > 0.0)) {
    throw ValidationError("power rule on a requires 1 + c > 0 so that a_n > 0");
  }
  SequenceRule rule;
  rule.kind_ = RuleKind::power;
  rule.c_ = c;
  rule.gamma_ = gamma;
  rule.target_ = target;
  return rule;
}

SequenceRule SequenceRule::alternating(double c, double gamma) {
  if (!std::isfinite(c) || !std::isfinite(gamma) || gamma <= 0.0) {
    throw ValidationError("alternating rule requires finite c and gamma > 0");
  }
  SequenceRule rule;
  rule.kind_ = RuleKind::alternating;
  rule.c_ = c;
  rule.gamma_ = gamma;
  return rule;
}

SequenceRule SequenceRule::exponential(double c, double r) {
  if (!std::isfinite(c) || !(r > 0.0 && r < 1.0)) {
    throw ValidationError("exponential rule requires 0 < r < 1");
  }
  SequenceRule rule;
  rule.kind_ = RuleKind::exponential;
  rule.c_ = c;
  rule.r_ = r;
  return rule;
}

std::pair<double, double> SequenceRule::operator()(std::size_t n) const {
  const double x = static_cast<double>(n);
  switch (kind_) {
    case RuleKind::finite:
      return {jacobi_.a(n), jacobi_.b(n)};
    case RuleKind::power: {
      const double d = c_ * std::pow(x, -gamma_);
      return target_ == RuleTarget::a ? std::pair{1.0 + d, 0.0} : std::pair{1.0, d};
    }
    case RuleKind::alternating: {
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      return {1.0, sign * c_ * std::pow(x, -gamma_)};
    }
    case RuleKind::exponential:
      return {1.0, c_ * std::pow(r_, x)};
  }
  return {1.0, 0.0};
}

double SequenceRule::log_deviation(std::size_t n) const {
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();
  if (c_ == 0.0 && kind_ != RuleKind::finite) return neg_inf;
  const double x = static_cast<double>(n);
  switch (kind_) {
    case RuleKind::finite: {
      const double d = std::abs(jacobi_.a(n) - 1.0) + std::abs(jacobi_.b(n));
      return d > 0.0 ? std::log(d) : neg_inf;
    }
    case RuleKind::power:
    case RuleKind::alternating:
      return std::log(std::abs(c_)) - gamma_ * std::log(x);
    case RuleKind::exponential:
      return std::log(std::abs(c_)) + x * std::log(r_);
  }
  return neg_inf;
}

std::optional<std::size_t> SequenceRule::support() const {
  if (kind_ == RuleKind::finite) return jacobi_.size();
  if (c_ == 0.0) return 0;
  return std::nullopt;
}

PerturbedJacobi SequenceRule::truncate(std::size_t n) const {
  std::vector<double> a(n), b(n);
  for (std::size_t k = 1; k <= n; ++k) {
    std::tie(a[k - 1], b[k - 1]) = (*this)(k);
  }
  return PerturbedJacobi(std::move(a), std::move(b));
}

// --- SpectralMeasure -------------------------------------------------------

SpectralMeasure::SpectralMeasure(std::vector<PointMass> points, std::vector<double> density)
    : points_(std::move(points)), density_(std::move(density)) {
  std::sort(points_.begin(), points_.end(),
            [](const PointMass& x, const PointMass& y) { return x.energy < y.energy; });
  for (std::size_t j = 0; j < points_.size(); ++j) {
    const auto& p = points_[j];
    if (!std::isfinite(p.energy) || !(std::abs(p.energy) > 2.0)) {
      throw ValidationError("point masses must lie outside [-2, 2]");
    }
    if (!(p.weight > 0.0) || !std::isfinite(p.weight)) {
      throw ValidationError("point masses must have positive weight");
    }
    if (j > 0 && points_[j - 1].energy == p.energy) {
      throw ValidationError("point mass locations must be distinct");
    }
  }
  for (double f : density_) {
    if (!(f >= 0.0) || !std::isfinite(f)) {
      throw ValidationError("density samples must be finite and nonnegative");
    }
  }
}

double SpectralMeasure::point_mass() const {
  double s = 0.0;
  for (const auto& p : points_) s += p.weight;
  return s;
}

double SpectralMeasure::density_mass() const {
  // dE = 2 sin(theta) d(theta)
  const std::size_t g = grid();
  if (g == 0) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < g; ++i) {
    s += density_[i] * 2.0 * std::sin(theta(i, g));
  }
  return s * pi / static_cast<double>(g);
}

// --- RealPolynomial --------------------------------------------------------

RealPolynomial::RealPolynomial(std::vector<double> coefficients) : c_(std::move(coefficients)) {
  while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

RealPolynomial RealPolynomial::monomial(std::size_t k, double c) {
  std::vector<double> coeffs(k + 1, 0.0);
  coeffs[k] = c;
  return RealPolynomial(std::move(coeffs));
}

double RealPolynomial::operator()(double x) const {
  double s = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * x + *it;
  return s;
}

cplx RealPolynomial::operator()(cplx z) const {
  cplx s = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * z + *it;
  return s;
}

RealPolynomial RealPolynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<double> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
  return RealPolynomial(std::move(d));
}

RealPolynomial RealPolynomial::operator+(const RealPolynomial& rhs) const {
  std::vector<double> s(std::max(c_.size(), rhs.c_.size()), 0.0);
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = coefficient(k) + rhs.coefficient(k);
  return RealPolynomial(std::move(s));
}

RealPolynomial RealPolynomial::operator-(const RealPolynomial& rhs) const {
  std::vector<double> s(std::max(c_.size(), rhs.c_.size()), 0.0);
  for (std::size_t k = 0; k < s.size(); ++k) s[k] = coefficient(k) - rhs.coefficient(k);
  return RealPolynomial(std::move(s));
}

RealPolynomial RealPolynomial::operator*(const RealPolynomial& rhs) const {
  if (is_zero() || rhs.is_zero()) return {};
  std::vector<double> p(c_.size() + rhs.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    for (std::size_t j = 0; j < rhs.c_.size(); ++j) p[i + j] += c_[i] * rhs.c_[j];
  }
  return RealPolynomial(std::move(p));
}

RealPolynomial RealPolynomial::operator*(double s) const {
  std::vector<double> p = c_;
  for (double& x : p) x *= s;
  return RealPolynomial(std::move(p));
}

std::vector<cplx> RealPolynomial::roots() const {
  const int n = degree();
  if (n <= 0) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  const double lead = c_.back();
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -c_[static_cast<std::size_t>(i)] / lead;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("companion eigenvalue iteration did not converge");
  }
  const RealPolynomial dp = derivative();
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    cplx z = solver.eigenvalues()[i];
    // A few Newton steps; keep the best iterate.
    cplx best = z;
    double best_res = std::abs((*this)(z));
    for (int it = 0; it < 8; ++it) {
      const cplx d = dp(z);
      if (d == 0.0) break;
      z -= (*this)(z) / d;
      const double res = std::abs((*this)(z));
      if (res < best_res) {
        best = z;
        best_res = res;
      }
    }
    out.push_back(best);
  }
  std::sort(out.begin(), out.end(), [](cplx x, cplx y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return out;
}

double RealPolynomial::max_coefficient_deviation(const RealPolynomial& other) const {
  const std::size_t n = std::max(c_.size(), other.c_.size());
  double dev = 0.0;
  for (std::size_t k = 0; k < n; ++k) dev = std::max(dev, std::abs(coefficient(k) - other.coefficient(k)));
  return dev;
}

// --- ConditionReport -------------------------------------------------------

void ConditionReport::add(ConditionEntry entry) {
  for (const auto& e : entries_) {
    if (e.label == entry.label) throw std::logic_error("duplicate condition label: " + entry.label);
  }
  entries_.push_back(std::move(entry));
}

const ConditionEntry& ConditionReport::at(std::string_view label) const {
  for (const auto& e : entries_) {
    if (e.label == label) return e;
  }
  throw std::out_of_range("no condition labelled " + std::string(label));
}

bool ConditionReport::all_hold() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const ConditionEntry& e) {
    return e.verdict == Verdict::holds || e.verdict == Verdict::not_applicable;
  });
}

// --- dyadic windows --------------------------------------------------------

DyadicTest classify_increments(std::vector<double> increments, double magnitude,
                               const DyadicOptions& options) {
  DyadicTest out;
  out.increments = std::move(increments);
  const auto& inc = out.increments;
  if (inc.empty()) {
    out.verdict = Verdict::inconclusive;
    return out;
  }
  const double first = inc.front();
  const double last = inc.back();
  if (inc.size() >= 2 && first > 0.0) {
    out.decay_ratio = std::pow(last / first, 1.0 / static_cast<double>(inc.size() - 1));
  } else {
    out.decay_ratio = 0.0;
  }
  if (!std::isfinite(magnitude) || magnitude > options.divergence_cap || !std::isfinite(last)) {
    out.verdict = Verdict::fails;
  } else if (last < options.tolerance) {
    out.verdict = Verdict::holds;
  } else if (inc.size() >= 2 && out.decay_ratio >= options.stall_ratio) {
    out.verdict = Verdict::fails;
  } else if (options.geometric_ratio && inc.size() >= 2 && out.decay_ratio <= *options.geometric_ratio) {
    out.verdict = Verdict::holds;
  } else {
    out.verdict = Verdict::inconclusive;
  }
  return out;
}

DyadicTest dyadic_test(std::vector<double> values, const DyadicOptions& options) {
  std::vector<double> inc;
  double magnitude = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    magnitude = std::max(magnitude, std::abs(values[k]));
    if (k > 0) inc.push_back(std::abs(values[k] - values[k - 1]));
  }
  DyadicTest out = classify_increments(std::move(inc), magnitude, options);
  out.values = std::move(values);
  return out;
}

}  // namespace spectral
