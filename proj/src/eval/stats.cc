#include <cmath>
#include <limits>

#include "dissent/error.h"
#include "dissent/eval.h"

namespace dissent::eval {

namespace {

// Continued fraction for the incomplete beta (modified Lentz).
double beta_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 500;
  constexpr double kEpsilon = 1e-15;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEpsilon) break;
  }
  return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw ArgumentError("incomplete beta needs a, b > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw ArgumentError("incomplete beta needs x in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_fraction(a, b, x) / a;
  return 1.0 - front * beta_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided(double t, double df) {
  if (!(df > 0.0)) throw ArgumentError("degrees of freedom must be positive");
  if (std::isnan(t)) throw ArgumentError("t is NaN");
  if (std::isinf(t)) return 0.0;
  return incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

TTestResult paired_t_test(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw ArgumentError("paired t-test needs equal-length vectors");
  if (a.size() < 2) throw ArgumentError("paired t-test needs at least 2 pairs");
  const std::size_t n = a.size();
  double mean = 0.0;
  bool all_zero = true;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    mean += d;
    all_zero = all_zero && d == 0.0;
  }
  TTestResult r;
  r.df = n - 1;
  if (all_zero) return r;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dev = (a[i] - b[i]) - mean;
    ss += dev * dev;
  }
  const double var = ss / static_cast<double>(n - 1);
  // Treat variance lost to rounding as zero.
  if (var <= 1e-24 * std::max(1.0, mean * mean)) {
    r.degenerate = true;
    r.t = mean > 0 ? std::numeric_limits<double>::infinity()
                   : -std::numeric_limits<double>::infinity();
    r.p = 0.0;
    return r;
  }
  r.t = mean / std::sqrt(var / static_cast<double>(n));
  r.p = student_t_two_sided(r.t, static_cast<double>(r.df));
  return r;
}

McNemarResult mcnemar(const std::vector<int>& a_correct, const std::vector<int>& b_correct) {
  if (a_correct.size() != b_correct.size()) {
    throw ArgumentError("McNemar test needs equal-length vectors");
  }
  McNemarResult r;
  for (std::size_t i = 0; i < a_correct.size(); ++i) {
    if (a_correct[i] && !b_correct[i]) ++r.only_a;
    if (!a_correct[i] && b_correct[i]) ++r.only_b;
  }
  const double disagreements = static_cast<double>(r.only_a + r.only_b);
  if (disagreements == 0.0) return r;
  const double diff = std::max(
      0.0, std::fabs(static_cast<double>(r.only_a) - static_cast<double>(r.only_b)) - 1.0);
  r.chi2 = diff * diff / disagreements;
  r.p = std::erfc(std::sqrt(r.chi2 / 2.0));
  return r;
}

}  // namespace dissent::eval
