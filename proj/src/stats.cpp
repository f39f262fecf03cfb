#include "logdist/stats.hpp"

#include <cmath>
#include <cstddef>

#include "logdist/errors.hpp"

namespace logdist {

namespace {

// Regularized incomplete beta I_x(a, b) via the continued-fraction
// expansion (Lentz's method), the standard special-function route.
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-16;
  constexpr double kTiny = 1e-300;
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

double inc_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double ln = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
              b * std::log(1.0 - x);
  double front = std::exp(ln);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

// P(T <= t) for Student's t with df degrees of freedom, t >= 0.
double student_cdf(double t, double df) {
  double x = df / (df + t * t);
  return 1.0 - 0.5 * inc_beta(df / 2.0, 0.5, x);
}

}  // namespace

double student_t_975(int df) {
  if (df < 1) throw ParameterError("student_t_975 requires df >= 1");
  double lo = 0.0, hi = 1.0;
  while (student_cdf(hi, df) < 0.975) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (student_cdf(mid, df) < 0.975)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

MeanCi mean_ci95(std::span<const double> values) {
  if (values.empty()) throw ParameterError("mean_ci95 requires at least one value");
  MeanCi r;
  const std::size_t k = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  r.mean = sum / double(k);
  if (k == 1) {
    r.degenerate = true;
    return r;
  }
  double ss = 0.0;
  for (double v : values) ss += (v - r.mean) * (v - r.mean);
  double sd = std::sqrt(ss / double(k - 1));
  r.ci_halfwidth = student_t_975(int(k) - 1) * sd / std::sqrt(double(k));
  return r;
}

double kendall_tau(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2)
    throw ParameterError("kendall_tau requires two equally sized vectors of length >= 2");
  const std::size_t n = a.size();
  long long concordant = 0, discordant = 0, ties_a = 0, ties_b = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double da = a[i] - a[j];
      double db = b[i] - b[j];
      if (da == 0.0) ++ties_a;
      if (db == 0.0) ++ties_b;
      if (da == 0.0 || db == 0.0) continue;
      if ((da > 0.0) == (db > 0.0))
        ++concordant;
      else
        ++discordant;
    }
  }
  double n0 = double(n) * double(n - 1) / 2.0;
  double denom = std::sqrt((n0 - double(ties_a)) * (n0 - double(ties_b)));
  if (denom == 0.0) return 0.0;
  return double(concordant - discordant) / denom;
}

}  // namespace logdist
