#include "logdist/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <unordered_map>

#include "logdist/errors.hpp"

namespace logdist {

namespace {

void validate_histogram(const Histogram1D& h, const char* side) {
  if (h.masses.size() == 0)
    throw ValidationError(std::string(side) + " histogram has no entries");
  for (Eigen::Index i = 0; i < h.masses.size(); ++i) {
    double m = h.masses[i];
    if (!std::isfinite(m) || m < 0.0)
      throw ValidationError(std::string(side) + " histogram has a negative or non-finite mass");
  }
}

struct Support {
  bool empty = true;
  std::int64_t lo = 0, hi = 0;  // global indices of first/last positive bin
};

Support support_of(const Histogram1D& h) {
  Support s;
  for (Eigen::Index i = 0; i < h.masses.size(); ++i) {
    if (h.masses[i] > 0.0) {
      std::int64_t g = h.origin + i;
      if (s.empty) {
        s.lo = s.hi = g;
        s.empty = false;
      } else {
        s.hi = g;
      }
    }
  }
  return s;
}

double mass_at(const Histogram1D& h, std::int64_t global) {
  std::int64_t i = global - h.origin;
  if (i < 0 || i >= h.masses.size()) return 0.0;
  return h.masses[i];
}

// Convex piecewise-linear function maintained as slope-trick heaps.
// L holds breakpoints left of the flat minimum (max-heap), R the ones to
// its right (min-heap, with a lazy shift used for sliding-window minima).
class SlopeFunction {
public:
  explicit SlopeFunction(std::size_t wall_copies) {
    for (std::size_t i = 0; i < wall_copies; ++i) {
      left_.push(0.0);
      right_.push(0.0);
    }
  }

  // f(r) += |r - z|
  void add_abs(double z) {
    left_.push(z);
    right_.push(z - shift_);
    double a = left_.top();
    double b = right_.top() + shift_;
    if (a > b) {
      min_value_ += a - b;
      left_.pop();
      right_.pop();
      left_.push(b);
      right_.push(a - shift_);
    }
  }

  // f(r) <- min over r' in [r - w, r] of f(r'): widen the flat part right.
  void relax_right(double w) { shift_ += w; }

  // Destructive evaluation at a point.
  double value_at(double r) {
    double v = min_value_;
    while (!left_.empty()) {
      double b = left_.top();
      left_.pop();
      if (b > r) v += b - r;
    }
    while (!right_.empty()) {
      double b = right_.top() + shift_;
      right_.pop();
      if (b < r) v += r - b;
    }
    return v;
  }

private:
  std::priority_queue<double> left_;
  std::priority_queue<double, std::vector<double>, std::greater<double>> right_;
  double shift_ = 0.0;
  double min_value_ = 0.0;
};

// Minimum cost of transporting a sub-measure of x (total = sum(y)) onto y,
// both given over the same global grid [lo, hi]. Equivalent to fitting a
// monotone "waste" CDF R with increments bounded by x to the CDF gap
// X - Y in L1; solved exactly by a sliding-window slope-trick DP.
double partial_transport_cost(const Histogram1D& x, const Histogram1D& y, std::int64_t lo,
                              std::int64_t hi, double surplus) {
  const std::size_t n = std::size_t(hi - lo + 1);
  SlopeFunction f(n + 2);
  double cum = 0.0;
  for (std::int64_t g = lo; g <= hi; ++g) {
    f.relax_right(mass_at(x, g));
    if (g < hi) {
      cum += mass_at(x, g) - mass_at(y, g);
      f.add_abs(cum);
    }
  }
  return f.value_at(surplus);
}

int32_t intern(std::unordered_map<std::string, std::int32_t>& ids, const std::string& s) {
  auto [it, inserted] = ids.try_emplace(s, std::int32_t(ids.size()));
  return it->second;
}

}  // namespace

Histogram1D histogram_from_bins(std::span<const std::int64_t> bins) {
  Histogram1D h;
  if (bins.empty()) {
    h.masses = Eigen::VectorXd::Zero(1);
    return h;
  }
  auto [lo, hi] = std::minmax_element(bins.begin(), bins.end());
  h.origin = *lo;
  h.masses = Eigen::VectorXd::Zero(*hi - *lo + 1);
  for (std::int64_t b : bins) h.masses[b - h.origin] += 1.0;
  return h;
}

double emd_1d(const Histogram1D& x, const Histogram1D& y) {
  validate_histogram(x, "first");
  validate_histogram(y, "second");
  Support sx = support_of(x);
  Support sy = support_of(y);
  if (sx.empty && sy.empty) return 0.0;
  std::int64_t lo = sx.empty ? sy.lo : sy.empty ? sx.lo : std::min(sx.lo, sy.lo);
  std::int64_t hi = sx.empty ? sy.hi : sy.empty ? sx.hi : std::max(sx.hi, sy.hi);
  const double span = double(hi - lo + 1);
  if (sx.empty) return span * y.total();
  if (sy.empty) return span * x.total();

  const Histogram1D& big = x.total() >= y.total() ? x : y;
  const Histogram1D& small = x.total() >= y.total() ? y : x;
  const double surplus = big.total() - small.total();
  if (surplus == 0.0) {
    // Balanced: plain CDF sweep.
    double cum = 0.0, cost = 0.0;
    for (std::int64_t g = lo; g < hi; ++g) {
      cum += mass_at(x, g) - mass_at(y, g);
      cost += std::abs(cum);
    }
    return cost;
  }
  return span * surplus + partial_transport_cost(big, small, lo, hi, surplus);
}

double wasserstein_1(const Histogram1D& x, const Histogram1D& y) {
  validate_histogram(x, "first");
  validate_histogram(y, "second");
  const double tx = x.total();
  const double ty = y.total();
  if (tx <= 0.0 || ty <= 0.0)
    throw ParameterError("wasserstein_1 requires positive total mass on both sides");
  Support sx = support_of(x);
  Support sy = support_of(y);
  std::int64_t lo = std::min(sx.lo, sy.lo);
  std::int64_t hi = std::max(sx.hi, sy.hi);
  double cx = 0.0, cy = 0.0, cost = 0.0;
  for (std::int64_t g = lo; g < hi; ++g) {
    cx += mass_at(x, g) / tx;
    cy += mass_at(y, g) / ty;
    cost += std::abs(cx - cy);
  }
  return cost;
}

double dl_distance_normalized(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  if (n == 0 && m == 0) return 0.0;
  if (n == 0 || m == 0) return 1.0;  // max(n, m) insertions / max(n, m)
  std::vector<std::vector<std::int32_t>> d(n + 1, std::vector<std::int32_t>(m + 1, 0));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = std::int32_t(i);
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = std::int32_t(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      std::int32_t sub = a[i - 1] == b[j - 1] ? 0 : 1;
      std::int32_t best = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + sub});
      if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1])
        best = std::min(best, d[i - 2][j - 2] + 1);
      d[i][j] = best;
    }
  }
  return double(d[n][m]) / double(std::max(n, m));
}

double dl_distance_normalized(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::unordered_map<std::string, std::int32_t> ids;
  std::vector<std::int32_t> ia, ib;
  ia.reserve(a.size());
  ib.reserve(b.size());
  for (const auto& s : a) ia.push_back(intern(ids, s));
  for (const auto& s : b) ib.push_back(intern(ids, s));
  return dl_distance_normalized(std::span<const std::int32_t>(ia), std::span<const std::int32_t>(ib));
}

Assignment optimal_assignment(const CostMatrix& cost) {
  if (cost.rows() != cost.cols())
    throw ValidationError("assignment cost matrix must be square, got " +
                          std::to_string(cost.rows()) + "x" + std::to_string(cost.cols()));
  const int n = int(cost.rows());
  Assignment result;
  if (n == 0) return result;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!std::isfinite(cost(i, j)) || cost(i, j) < 0.0)
        throw ValidationError("assignment cost matrix entries must be finite and non-negative");

  // Hungarian method with row/column potentials (1-based sentinels).
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      int i0 = match[j0], j1 = 0;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  result.perm.assign(n, -1);
  for (int j = 1; j <= n; ++j)
    if (match[j] != 0) result.perm[match[j] - 1] = j - 1;
  for (int i = 0; i < n; ++i) result.total += cost(i, result.perm[i]);
  return result;
}

}  // namespace logdist
