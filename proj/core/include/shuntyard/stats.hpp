#pragma once

// Statistics for method comparisons: per-instance makespan reduction and a
// one-sided paired Student's t-test (alternative: the first sample's mean
// exceeds the second's).

#include <vector>

namespace shuntyard {

struct TTestResult {
  double t = 0.0;
  int df = 0;
  double p = 1.0;
  // Zero variance in the differences. t is then +/-infinity (or 0 when the
  // samples are identical) and p is 0, 1, or 0.5 by the sign of the mean.
  bool degenerate = false;
};

// Paired one-sided test of mean(a - b) > 0. Requires equal lengths, n >= 2.
TTestResult paired_t_test_one_sided(const std::vector<double>& a, const std::vector<double>& b);

// P(T > t) for Student's t with df degrees of freedom.
double student_t_upper_tail(double t, int df);

// (1 - ts/os) * 100. Undefined (throws) when os is zero.
double makespan_reduction(double os_makespan, double ts_makespan);

}  // namespace shuntyard
