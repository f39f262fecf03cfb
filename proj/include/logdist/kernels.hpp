#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace logdist {

/// Non-negative mass over uniformly spaced bins. `origin` is the global
/// index of masses[0]; the ground distance between bins i and j is |i-j|.
struct Histogram1D {
  std::int64_t origin = 0;
  Eigen::VectorXd masses;

  double total() const { return masses.size() == 0 ? 0.0 : masses.sum(); }
};

/// Builds a dense histogram spanning [min(bins), max(bins)] with unit mass
/// per entry. Empty input yields a single empty bin at origin 0.
Histogram1D histogram_from_bins(std::span<const std::int64_t> bins);

/// Exact unbalanced 1-D earth mover's distance under ground cost |i-j|.
/// When totals differ, the deficit side is augmented with a virtual
/// sink/source at distance D from every real bin, where D is the number
/// of bins spanned by the union support; surplus mass therefore costs
/// D per unit on top of the optimal partial transport. If one side has
/// zero total mass the result is D * (total of the other side); if both
/// are empty it is 0.
double emd_1d(const Histogram1D& x, const Histogram1D& y);

/// 1st Wasserstein distance between the unit-normalized histograms
/// (sum of absolute CDF differences over the union index range).
/// Throws ParameterError when either side has zero total mass.
double wasserstein_1(const Histogram1D& x, const Histogram1D& y);

/// Restricted Damerau-Levenshtein distance (insert, delete, substitute,
/// adjacent transposition) divided by max(|a|, |b|). Two empty sequences
/// give 0 by convention.
double dl_distance_normalized(std::span<const std::int32_t> a, std::span<const std::int32_t> b);
double dl_distance_normalized(const std::vector<std::string>& a, const std::vector<std::string>& b);

using CostMatrix = Eigen::MatrixXd;

struct Assignment {
  std::vector<int> perm;  // row i is assigned to column perm[i]
  double total = 0.0;
};

/// Minimum-cost perfect assignment on a square cost matrix (Hungarian
/// method with potentials, O(n^3)). Ties between equal-cost assignments
/// are resolved by the algorithm's fixed row/column scan order, which is
/// stable across runs and platforms. Throws ValidationError for
/// non-square input or entries that are negative or non-finite.
Assignment optimal_assignment(const CostMatrix& cost);

}  // namespace logdist
