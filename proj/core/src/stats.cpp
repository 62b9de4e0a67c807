#include "shuntyard/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace shuntyard {

namespace {

// Continued fraction for the regularized incomplete beta (modified Lentz).
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-14;
  constexpr double kTiny = 1e-300;

  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
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
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw std::runtime_error("incomplete beta continued fraction did not converge");
}

double reg_incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

}  // namespace

double student_t_upper_tail(double t, int df) {
  if (df < 1) throw std::invalid_argument("degrees of freedom must be positive");
  const double nu = static_cast<double>(df);
  const double x = nu / (nu + t * t);
  const double half_two_sided = 0.5 * reg_incomplete_beta(nu / 2.0, 0.5, x);
  return t >= 0.0 ? half_two_sided : 1.0 - half_two_sided;
}

TTestResult paired_t_test_one_sided(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("paired samples differ in length");
  const std::size_t n = a.size();
  if (n < 2) throw std::invalid_argument("need at least two pairs");

  double mean = 0.0;
  for (std::size_t k = 0; k < n; ++k) mean += a[k] - b[k];
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double d = (a[k] - b[k]) - mean;
    ss += d * d;
  }
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));

  TTestResult out;
  out.df = static_cast<int>(n) - 1;
  if (sd == 0.0) {
    out.degenerate = true;
    if (mean > 0.0) {
      out.t = std::numeric_limits<double>::infinity();
      out.p = 0.0;
    } else if (mean < 0.0) {
      out.t = -std::numeric_limits<double>::infinity();
      out.p = 1.0;
    } else {
      out.t = 0.0;
      out.p = 0.5;
    }
    return out;
  }
  out.t = mean * std::sqrt(static_cast<double>(n)) / sd;
  out.p = student_t_upper_tail(out.t, out.df);
  return out;
}

double makespan_reduction(double os_makespan, double ts_makespan) {
  if (os_makespan == 0.0) throw std::invalid_argument("one-sided makespan is zero");
  return (1.0 - ts_makespan / os_makespan) * 100.0;
}

}  // namespace shuntyard
