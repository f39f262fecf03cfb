#include "logdist/control_flow.hpp"

#include <unordered_map>

#include "logdist/errors.hpp"
#include "logdist/kernels.hpp"

namespace logdist {

NGramHistogram ngram_histogram(const EventLog& log, int n) {
  if (n < 2) throw ParameterError("n-gram size must be >= 2, got " + std::to_string(n));
  NGramHistogram hist;
  hist.n = n;
  const std::string dummy(kPaddingLabel);
  for (const Trace& trace : traces_of(log)) {
    std::vector<std::string> padded;
    padded.reserve(trace.activities.size() + 2 * std::size_t(n - 1));
    padded.insert(padded.end(), std::size_t(n - 1), dummy);
    padded.insert(padded.end(), trace.activities.begin(), trace.activities.end());
    padded.insert(padded.end(), std::size_t(n - 1), dummy);
    for (std::size_t i = 0; i + std::size_t(n) <= padded.size(); ++i) {
      std::vector<std::string> gram(padded.begin() + i, padded.begin() + i + n);
      ++hist.counts[std::move(gram)];
    }
  }
  return hist;
}

double ngd(const EventLog& log1, const EventLog& log2, int n) {
  NGramHistogram h1 = ngram_histogram(log1, n);
  NGramHistogram h2 = ngram_histogram(log2, n);
  std::int64_t denom = h1.total() + h2.total();
  if (denom == 0) return 0.0;  // both logs empty, by convention
  std::int64_t diff = 0;
  for (const auto& [gram, c1] : h1.counts) {
    auto it = h2.counts.find(gram);
    std::int64_t c2 = it == h2.counts.end() ? 0 : it->second;
    diff += std::abs(c1 - c2);
  }
  for (const auto& [gram, c2] : h2.counts) {
    if (!h1.counts.count(gram)) diff += c2;
  }
  return double(diff) / double(denom);
}

double cfld(const EventLog& log1, const EventLog& log2, const CfldOptions& options) {
  const std::size_t n = log1.num_cases();
  if (n != log2.num_cases())
    throw ParameterError("cfld requires equal case counts, got " + std::to_string(n) + " vs " +
                         std::to_string(log2.num_cases()));
  if (n == 0) throw ParameterError("cfld requires at least one case per log");
  if (n > options.max_cases)
    throw ResourceError("cfld would materialize a " + std::to_string(n) + "x" + std::to_string(n) +
                        " matrix; raise --max-cases (currently " +
                        std::to_string(options.max_cases) + ") to allow this");

  // Intern labels across both logs so traces compare as int sequences.
  std::unordered_map<std::string, std::int32_t> ids;
  auto intern_traces = [&](const EventLog& log) {
    std::vector<std::vector<std::int32_t>> out;
    for (const Trace& t : traces_of(log)) {
      std::vector<std::int32_t> seq;
      seq.reserve(t.activities.size());
      for (const std::string& a : t.activities) {
        auto [it, inserted] = ids.try_emplace(a, std::int32_t(ids.size()));
        seq.push_back(it->second);
      }
      out.push_back(std::move(seq));
    }
    return out;
  };
  auto t1 = intern_traces(log1);
  auto t2 = intern_traces(log2);

  CostMatrix cost(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      cost(Eigen::Index(i), Eigen::Index(j)) = dl_distance_normalized(
          std::span<const std::int32_t>(t1[i]), std::span<const std::int32_t>(t2[j]));
  return optimal_assignment(cost).total / double(n);
}

}  // namespace logdist
