#include "spectral/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spectral {

ScaledValue ScaledValue::from(cplx v) {
  const double m = std::abs(v);
  if (m == 0.0) return {0.0, 1.0, true};
  return {std::log(m), v / m, false};
}

cplx ScaledValue::value() const {
  if (zero) return 0.0;
  return phase * std::exp(log_magnitude);
}

double log_distance(const ScaledValue& v, const ScaledValue& w) {
  if (v.zero || w.zero) return std::numeric_limits<double>::infinity();
  const double dm = v.log_magnitude - w.log_magnitude;
  const double dphi = std::arg(v.phase / w.phase);
  return std::hypot(dm, dphi);
}

namespace {

// Runs x_{n+1} = (A_n x_n - B_n x_{n-1}) / D_n from x_0 = 1, x_{-1} = 0,
// carrying a shared logarithmic scale so the pair never overflows.
template <typename Coefficients>
std::vector<ScaledValue> scaled_recurrence(std::size_t n_max, Coefficients coeffs) {
  constexpr double big = 0x1p600;
  constexpr double small = 0x1p-600;
  std::vector<ScaledValue> out;
  out.reserve(n_max + 1);
  cplx prev = 0.0;
  cplx cur = 1.0;
  double log_scale = 0.0;
  auto record = [&](cplx x) {
    ScaledValue s = ScaledValue::from(x);
    if (!s.zero) s.log_magnitude += log_scale;
    out.push_back(s);
  };
  record(cur);
  for (std::size_t n = 0; n < n_max; ++n) {
    const auto [alpha, beta, denom] = coeffs(n);
    const cplx next = (alpha * cur - beta * prev) / denom;
    prev = cur;
    cur = next;
    const double m = std::max(std::abs(prev), std::abs(cur));
    if (m > big || (m < small && m > 0.0)) {
      prev /= m;
      cur /= m;
      log_scale += std::log(m);
    }
    record(cur);
  }
  return out;
}

struct Step {
  cplx alpha;
  cplx beta;
  double denom;
};

}  // namespace

std::vector<ScaledValue> eval_pn(const PerturbedJacobi& jacobi, cplx energy, std::size_t n_max) {
  // a_{n+1} p_{n+1} = (E - b_{n+1}) p_n - a_n p_{n-1}; a_0 multiplies p_{-1} = 0.
  return scaled_recurrence(n_max, [&](std::size_t n) {
    return Step{energy - jacobi.b(n + 1), cplx(n == 0 ? 0.0 : jacobi.a(n)), jacobi.a(n + 1)};
  });
}

std::vector<ScaledValue> szego_sequence(const SequenceRule& rule, cplx z, std::size_t n_max) {
  const double r = std::abs(z);
  if (!(r > 0.0 && r < 1.0)) throw ValidationError("szego_sequence requires 0 < |z| < 1");
  const cplx z2 = z * z;
  // s_{n+1} = ((1 + z^2 - b_{n+1} z) s_n - a_n z^2 s_{n-1}) / a_{n+1}
  double a_n = 1.0;
  double a_next = rule(1).first;
  double b_next = rule(1).second;
  return scaled_recurrence(n_max, [&](std::size_t n) {
    if (n > 0) {
      a_n = a_next;
      std::tie(a_next, b_next) = rule(n + 1);
    }
    return Step{1.0 + z2 - b_next * z, n == 0 ? cplx(0.0) : a_n * z2, a_next};
  });
}

std::vector<ScaledValue> szego_sequence(const PerturbedJacobi& jacobi, cplx z, std::size_t n_max) {
  return szego_sequence(SequenceRule::finite(jacobi), z, n_max);
}

namespace {

// Neumaier-compensated running sum.
struct Accumulator {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double t = sum + x;
    carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

}  // namespace

ConditionReport check_hypotheses(const SequenceRule& rule, std::size_t n, double tolerance) {
  if (n < 100) throw ValidationError("check_hypotheses requires N >= 100");
  const std::vector<std::size_t> ends{n / 8, n / 4, n / 2, n};
  Accumulator hs, log_a, sum_b;
  std::vector<double> hs_trace, log_a_trace, b_trace;
  std::size_t next_end = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    const auto [a, b] = rule(k);
    hs.add((a - 1.0) * (a - 1.0) + b * b);
    log_a.add(std::log(a));
    sum_b.add(b);
    if (k == ends[next_end]) {
      hs_trace.push_back(hs.value());
      log_a_trace.push_back(log_a.value());
      b_trace.push_back(sum_b.value());
      ++next_end;
    }
  }
  DyadicOptions opts;
  opts.tolerance = tolerance;
  ConditionReport report("szego_hypotheses");
  auto entry = [&](const char* label, std::vector<double> trace, const char* what) {
    const DyadicTest t = dyadic_test(trace, opts);
    ConditionEntry e;
    e.label = label;
    e.value = trace.back();
    e.trace = std::move(trace);
    e.verdict = t.verdict;
    e.note = std::string(what) + "; last window increment " + std::to_string(t.increments.back()) +
             ", decay ratio " + std::to_string(t.decay_ratio);
    report.add(std::move(e));
  };
  entry("hilbert_schmidt", std::move(hs_trace), "sum (a_n-1)^2 + b_n^2");
  entry("log_a_sum", std::move(log_a_trace), "sum log a_n");
  entry("b_sum", std::move(b_trace), "sum b_n");
  return report;
}

std::vector<SzegoDetection> detect_szego_asymptotics(const SequenceRule& rule,
                                                     const std::vector<cplx>& z_grid,
                                                     const SzegoOptions& options) {
  if (options.base_n == 0 || options.windows == 0) {
    throw ValidationError("detect_szego_asymptotics needs base_n > 0 and windows > 0");
  }
  const std::size_t n_max = options.base_n << options.windows;
  DyadicOptions dyadic;
  dyadic.tolerance = options.tolerance;
  std::vector<SzegoDetection> out;
  out.reserve(z_grid.size());
  for (const cplx z : z_grid) {
    if (std::abs(z) > 0.95) throw ValidationError("detect_szego_asymptotics requires |z| <= 0.95");
    const auto s = szego_sequence(rule, z, n_max);
    std::vector<double> increments;
    double magnitude = 0.0;
    for (std::size_t k = 0; k < options.windows; ++k) {
      const auto& lo = s[options.base_n << k];
      const auto& hi = s[options.base_n << (k + 1)];
      increments.push_back(log_distance(hi, lo));
      magnitude = std::max(magnitude, std::abs(hi.log_magnitude));
    }
    SzegoDetection d;
    d.z = z;
    // A limit of zero shows up as log s_n -> -inf, i.e. non-decaying increments.
    d.test = classify_increments(std::move(increments), magnitude, dyadic);
    d.converged = d.test.verdict;
    d.limit = s.back();
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace spectral
