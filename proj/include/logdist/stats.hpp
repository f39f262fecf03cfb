#pragma once

#include <span>

namespace logdist {

/// Two-sided 95% Student-t critical value t_{0.975, df}. df >= 1.
double student_t_975(int df);

struct MeanCi {
  double mean = 0.0;
  double ci_halfwidth = 0.0;  // t_{0.975,k-1} * s / sqrt(k); 0 when k == 1
  bool degenerate = false;    // true when k == 1
};

MeanCi mean_ci95(std::span<const double> values);

/// Kendall rank correlation (tau-b, tie-corrected) between two equally
/// sized score vectors.
double kendall_tau(std::span<const double> a, std::span<const double> b);

}  // namespace logdist
