#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "logdist/event_log.hpp"

namespace logdist {

/// Frequencies of length-n activity windows over dummy-padded traces.
/// Keys use kPaddingLabel for the n-1 leading/trailing dummies.
struct NGramHistogram {
  int n = 2;
  std::map<std::vector<std::string>, std::int64_t> counts;

  std::int64_t total() const {
    std::int64_t t = 0;
    for (const auto& [k, c] : counts) t += c;
    return t;
  }
};

/// Counts all n-grams of every trace, each trace padded with n-1 dummy
/// labels on both sides. Throws ParameterError for n < 2.
NGramHistogram ngram_histogram(const EventLog& log, int n);

/// Sum of absolute n-gram frequency differences normalized by the total
/// frequency mass of both logs; in [0, 1]. Two empty logs give 0.
double ngd(const EventLog& log1, const EventLog& log2, int n = 2);

struct CfldOptions {
  /// Largest case count for which the dense N x N distance matrix is
  /// materialized; exceeding it raises ResourceError naming --max-cases.
  std::size_t max_cases = 5000;
};

/// Control-flow log distance: mean normalized Damerau-Levenshtein
/// distance under the optimal (Hungarian) pairing of cases; in [0, 1].
/// Requires both logs to have the same number of cases N >= 1.
double cfld(const EventLog& log1, const EventLog& log2, const CfldOptions& options = {});

}  // namespace logdist
