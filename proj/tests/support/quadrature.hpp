#pragma once

// Test-side oracle: Student-t tail probabilities by direct Simpson
// integration of the density. Deliberately naive and independent of the
// library's continued-fraction implementation.

#include <cmath>
#include <cstddef>

namespace testsupport {

inline double student_t_pdf(double x, int df) {
  const double nu = static_cast<double>(df);
  const double ln_norm =
      std::lgamma((nu + 1.0) / 2.0) - std::lgamma(nu / 2.0) - 0.5 * std::log(nu * M_PI);
  return std::exp(ln_norm - (nu + 1.0) / 2.0 * std::log1p(x * x / nu));
}

// P(T > t) via 0.5 - integral of the pdf over [0, t] (symmetry for t < 0).
inline double student_t_upper_tail_quadrature(double t, int df) {
  if (t < 0.0) return 1.0 - student_t_upper_tail_quadrature(-t, df);
  const std::size_t segments = 40'000;  // Simpson needs an even count
  const double h = t / static_cast<double>(segments);
  double sum = student_t_pdf(0.0, df) + student_t_pdf(t, df);
  for (std::size_t k = 1; k < segments; ++k) {
    const double x = h * static_cast<double>(k);
    sum += student_t_pdf(x, df) * ((k % 2 == 1) ? 4.0 : 2.0);
  }
  const double integral = sum * h / 3.0;
  return 0.5 - integral;
}

}  // namespace testsupport
