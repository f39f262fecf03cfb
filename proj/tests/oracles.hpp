// Test-only reference implementations, deliberately independent of the
// library's solver paths: the transport oracle enumerates integer plans,
// the edit-distance oracle is the plain recursive definition, and the
// assignment oracle is factorial brute force.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <span>
#include <vector>

#include "logdist/kernels.hpp"

namespace oracles {

// ---------------------------------------------------------------------------
// Exhaustive integer transport-plan oracle for the unbalanced EMD.
//
// Demands are the smaller side's bins plus, when totals differ, a virtual
// sink at distance `span` (number of bins covered by the union support)
// from every supplier. All integer plans are explored supplier by
// supplier; memoization on the remaining-demand vector keeps it tractable
// for the test sizes (<= 8 bins, masses <= 5).
// ---------------------------------------------------------------------------

class TransportPlanOracle {
public:
  double min_cost(const logdist::Histogram1D& x, const logdist::Histogram1D& y) {
    auto sx = collect(x);
    auto sy = collect(y);
    if (sx.empty() && sy.empty()) return 0.0;
    std::int64_t lo = std::numeric_limits<std::int64_t>::max();
    std::int64_t hi = std::numeric_limits<std::int64_t>::min();
    for (auto& [p, m] : sx) lo = std::min(lo, p), hi = std::max(hi, p);
    for (auto& [p, m] : sy) lo = std::min(lo, p), hi = std::max(hi, p);
    const double span = double(hi - lo + 1);
    long long tx = total(sx), ty = total(sy);
    if (tx == 0) return span * double(ty);
    if (ty == 0) return span * double(tx);

    auto& big = tx >= ty ? sx : sy;
    auto& small = tx >= ty ? sy : sx;
    const long long surplus = std::abs(tx - ty);

    suppliers_ = big;
    demand_pos_.clear();
    std::vector<int> demand;
    for (auto& [p, m] : small) {
      demand_pos_.push_back(double(p));
      demand.push_back(int(m));
    }
    sink_index_ = -1;
    if (surplus > 0) {
      sink_index_ = int(demand.size());
      demand_pos_.push_back(0.0);  // unused; sink cost is uniform
      demand.push_back(int(surplus));
    }
    sink_cost_ = span;
    memo_.clear();
    return best(0, demand);
  }

private:
  using Bins = std::vector<std::pair<std::int64_t, long long>>;

  static Bins collect(const logdist::Histogram1D& h) {
    Bins out;
    for (Eigen::Index i = 0; i < h.masses.size(); ++i)
      if (h.masses[i] > 0) out.emplace_back(h.origin + i, std::llround(h.masses[i]));
    return out;
  }

  static long long total(const Bins& b) {
    long long t = 0;
    for (auto& [p, m] : b) t += m;
    return t;
  }

  double cost_of(std::size_t supplier, std::size_t demand) const {
    if (int(demand) == sink_index_) return sink_cost_;
    return std::abs(double(suppliers_[supplier].first) - demand_pos_[demand]);
  }

  double best(std::size_t supplier, std::vector<int>& demand) {
    if (supplier == suppliers_.size()) {
      for (int d : demand)
        if (d != 0) return std::numeric_limits<double>::infinity();
      return 0.0;
    }
    std::vector<int> key(demand);
    key.push_back(int(supplier));
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    double result = distribute(supplier, 0, int(suppliers_[supplier].second), demand);
    memo_.emplace(std::move(key), result);
    return result;
  }

  // Distribute `remaining` units of one supplier over demands[slot..].
  double distribute(std::size_t supplier, std::size_t slot, int remaining,
                    std::vector<int>& demand) {
    if (slot == demand.size())
      return remaining == 0 ? best(supplier + 1, demand)
                            : std::numeric_limits<double>::infinity();
    double out = std::numeric_limits<double>::infinity();
    const int cap = std::min(remaining, demand[slot]);
    for (int take = 0; take <= cap; ++take) {
      demand[slot] -= take;
      double tail = distribute(supplier, slot + 1, remaining - take, demand);
      demand[slot] += take;
      if (tail < std::numeric_limits<double>::infinity())
        out = std::min(out, take * cost_of(supplier, slot) + tail);
    }
    return out;
  }

  Bins suppliers_;
  std::vector<double> demand_pos_;
  int sink_index_ = -1;
  double sink_cost_ = 0.0;
  std::map<std::vector<int>, double> memo_;
};

inline double transport_plan_min_cost(const logdist::Histogram1D& x,
                                      const logdist::Histogram1D& y) {
  TransportPlanOracle oracle;
  return oracle.min_cost(x, y);
}

// ---------------------------------------------------------------------------
// Plain recursive (memoized) restricted Damerau-Levenshtein definition.
// ---------------------------------------------------------------------------

class DlRecursiveOracle {
public:
  double normalized(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
    if (a.empty() && b.empty()) return 0.0;
    a_ = a;
    b_ = b;
    memo_.assign((a.size() + 1) * (b.size() + 1), -1);
    return double(rec(a.size(), b.size())) / double(std::max(a.size(), b.size()));
  }

private:
  int rec(std::size_t i, std::size_t j) {
    if (i == 0) return int(j);
    if (j == 0) return int(i);
    int& slot = memo_[i * (b_.size() + 1) + j];
    if (slot >= 0) return slot;
    int best = std::min({rec(i - 1, j) + 1, rec(i, j - 1) + 1,
                         rec(i - 1, j - 1) + (a_[i - 1] == b_[j - 1] ? 0 : 1)});
    if (i >= 2 && j >= 2 && a_[i - 1] == b_[j - 2] && a_[i - 2] == b_[j - 1])
      best = std::min(best, rec(i - 2, j - 2) + 1);
    return slot = best;
  }

  std::span<const std::int32_t> a_, b_;
  std::vector<int> memo_;
};

inline double dl_recursive(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
  DlRecursiveOracle oracle;
  return oracle.normalized(a, b);
}

// ---------------------------------------------------------------------------
// Factorial brute-force assignment.
// ---------------------------------------------------------------------------

inline double assignment_brute_force(const logdist::CostMatrix& cost) {
  const int n = int(cost.rows());
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (int i = 0; i < n; ++i) total += cost(i, perm[std::size_t(i)]);
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// ---------------------------------------------------------------------------
// Quantile-based W1 between two empirical samples (values in bins),
// walked in exact 1/(|A|*|B|) probability steps.
// ---------------------------------------------------------------------------

inline double w1_sorted_samples(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const std::size_t na = a.size(), nb = b.size();
  double cost = 0.0;
  for (std::size_t u = 0; u < na * nb; ++u) cost += std::abs(a[u / nb] - b[u / na]);
  return cost / double(na * nb);
}

// Deterministic generator helpers for the randomized suites.
inline std::mt19937 rng(std::uint32_t seed) { return std::mt19937(seed); }

inline logdist::Histogram1D random_histogram(std::mt19937& gen, int max_bins, int max_mass,
                                             std::int64_t origin_lo = -3,
                                             std::int64_t origin_hi = 3) {
  std::uniform_int_distribution<int> nbins(1, max_bins);
  std::uniform_int_distribution<int> mass(0, max_mass);
  std::uniform_int_distribution<std::int64_t> origin(origin_lo, origin_hi);
  logdist::Histogram1D h;
  h.origin = origin(gen);
  h.masses = Eigen::VectorXd::Zero(nbins(gen));
  for (Eigen::Index i = 0; i < h.masses.size(); ++i) h.masses[i] = mass(gen);
  return h;
}

}  // namespace oracles
