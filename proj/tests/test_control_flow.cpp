#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "logdist/control_flow.hpp"
#include "logdist/errors.hpp"
#include "logdist/kernels.hpp"

using namespace logdist;

namespace {

// One event per activity, sequential hours, one case per trace.
EventLog log_of(const std::vector<std::vector<std::string>>& traces) {
  std::vector<Event> events;
  std::int64_t base = 1650000000;
  for (std::size_t c = 0; c < traces.size(); ++c) {
    for (std::size_t i = 0; i < traces[c].size(); ++i) {
      Event e;
      e.case_id = "c" + std::to_string(c + 1);
      e.activity = traces[c][i];
      e.start = Timestamp{base + std::int64_t(i) * 3600, 0};
      e.end = Timestamp{base + std::int64_t(i) * 3600 + 1800, 0};
      events.push_back(std::move(e));
    }
  }
  return EventLog::from_events(std::move(events));
}

double cfld_brute_force(const EventLog& a, const EventLog& b) {
  auto ta = traces_of(a);
  auto tb = traces_of(b);
  std::vector<std::size_t> perm(ta.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (std::size_t i = 0; i < ta.size(); ++i)
      total += dl_distance_normalized(ta[i].activities, tb[perm[i]].activities);
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best / double(ta.size());
}

}  // namespace

TEST_CASE("ngram_histogram pads traces with dummies") {
  EventLog log = log_of({{"A", "B", "C"}});
  NGramHistogram h = ngram_histogram(log, 2);
  const std::string d(kPaddingLabel);
  CHECK(h.counts.at({d, "A"}) == 1);
  CHECK(h.counts.at({"A", "B"}) == 1);
  CHECK(h.counts.at({"B", "C"}) == 1);
  CHECK(h.counts.at({"C", d}) == 1);
  CHECK(h.total() == 4);  // trace length + n - 1

  // Single-activity trace with n = 3.
  NGramHistogram h3 = ngram_histogram(log_of({{"A"}}), 3);
  CHECK(h3.counts.at({d, d, "A"}) == 1);
  CHECK(h3.counts.at({d, "A", d}) == 1);
  CHECK(h3.counts.at({"A", d, d}) == 1);
  CHECK(h3.total() == 3);

  CHECK(ngram_histogram(log_of({}), 2).counts.empty());
  CHECK_THROWS_AS(ngram_histogram(log, 1), ParameterError);
}

TEST_CASE("ngram total matches sum of trace length + n - 1") {
  EventLog log = log_of({{"A", "B"}, {"A", "B", "C", "D"}, {"Z"}});
  for (int n = 2; n <= 4; ++n) {
    NGramHistogram h = ngram_histogram(log, n);
    std::int64_t expected = 0;
    for (const Trace& t : traces_of(log)) expected += std::int64_t(t.activities.size()) + n - 1;
    CHECK(h.total() == expected);
  }
}

TEST_CASE("ngd reproduces the worked 0.4 example") {
  EventLog l1 = log_of({{"A", "B", "C", "D"}, {"A", "B", "C", "D"}, {"A", "B", "C", "D"}});
  EventLog l2 = log_of({{"A", "B", "E", "D"}, {"A", "B", "E", "D"}, {"A", "B", "E", "D"}});
  CHECK(ngd(l1, l2, 2) == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(ngd(l1, l1, 2) == doctest::Approx(0.0));
}

TEST_CASE("ngd is 1 for disjoint alphabets and 0 for empty logs") {
  EventLog l1 = log_of({{"A", "B"}});
  EventLog l2 = log_of({{"C", "D"}});
  // Every n-gram differs, including the dummy-padded ones.
  CHECK(ngd(l1, l2, 2) == doctest::Approx(1.0));
  CHECK(ngd(log_of({}), log_of({}), 2) == doctest::Approx(0.0));
}

TEST_CASE("ngd is symmetric, in [0,1], and ignores case order and timestamps") {
  EventLog l1 = log_of({{"A", "B"}, {"B", "A"}, {"A"}});
  EventLog l2 = log_of({{"B", "A"}, {"A"}, {"A", "B"}});  // same multiset of traces
  CHECK(ngd(l1, l2, 2) == doctest::Approx(0.0));
  EventLog l3 = log_of({{"A", "C"}, {"C"}});
  CHECK(ngd(l1, l3, 2) == doctest::Approx(ngd(l3, l1, 2)));
  CHECK(ngd(l1, l3, 2) >= 0.0);
  CHECK(ngd(l1, l3, 2) <= 1.0);
}

TEST_CASE("cfld basics") {
  EventLog l1 = log_of({{"A", "B"}});
  EventLog l2 = log_of({{"A", "C"}});
  CHECK(cfld(l1, l1) == doctest::Approx(0.0));
  CHECK(cfld(l1, l2) == doctest::Approx(0.5));  // one substitution over length 2
  EventLog three = log_of({{"A"}, {"B"}, {"C"}});
  CHECK_THROWS_AS(cfld(l1, three), ParameterError);
  CHECK_THROWS_AS(cfld(log_of({}), log_of({})), ParameterError);
}

TEST_CASE("cfld respects the case budget") {
  EventLog l1 = log_of({{"A"}, {"B"}});
  EventLog l2 = log_of({{"A"}, {"C"}});
  CfldOptions opts;
  opts.max_cases = 1;
  CHECK_THROWS_WITH_AS(cfld(l1, l2, opts), doctest::Contains("--max-cases"), ResourceError);
}

TEST_CASE("cfld equals brute force over all case pairings") {
  std::mt19937 gen(2024);
  std::uniform_int_distribution<int> ncases(1, 5);
  std::uniform_int_distribution<int> len(1, 4);
  std::uniform_int_distribution<int> label(0, 3);
  const char* alphabet[] = {"A", "B", "C", "D"};
  for (int trial = 0; trial < 40; ++trial) {
    int n = ncases(gen);
    auto make = [&] {
      std::vector<std::vector<std::string>> traces;
      for (int c = 0; c < n; ++c) {
        std::vector<std::string> t(std::size_t(len(gen)));
        for (auto& a : t) a = alphabet[label(gen)];
        traces.push_back(std::move(t));
      }
      return log_of(traces);
    };
    EventLog a = make();
    EventLog b = make();
    CAPTURE(trial);
    CHECK(cfld(a, b) == doctest::Approx(cfld_brute_force(a, b)).epsilon(1e-9));
    CHECK(cfld(a, b) == doctest::Approx(cfld(b, a)).epsilon(1e-9));
  }
}
