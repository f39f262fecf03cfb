#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "logdist/errors.hpp"
#include "logdist/harness.hpp"
#include "logdist/scenarios.hpp"
#include "logdist/simulation.hpp"
#include "logdist/stats.hpp"

using namespace logdist;

namespace {

constexpr std::int64_t kMonday9 = 1678093200;

Event ev(const std::string& cid, const std::string& act, std::int64_t start, std::int64_t end) {
  return Event{cid, act, Timestamp{start, 0}, Timestamp{end, 0}};
}

EventLog fixture_log(int cases) {
  std::vector<Event> events;
  for (int k = 0; k < cases; ++k) {
    std::int64_t base = kMonday9 + k * 5400;
    events.push_back(ev("c" + std::to_string(k + 1), "A", base, base + 1800));
    events.push_back(ev("c" + std::to_string(k + 1), "B", base + 3600, base + 5400));
  }
  return EventLog::from_events(std::move(events));
}

}  // namespace

TEST_CASE("student t critical values match the standard table") {
  CHECK(student_t_975(1) == doctest::Approx(12.7062).epsilon(1e-4));
  CHECK(student_t_975(2) == doctest::Approx(4.3027).epsilon(1e-4));
  CHECK(student_t_975(4) == doctest::Approx(2.7764).epsilon(1e-4));
  CHECK(student_t_975(9) == doctest::Approx(2.2622).epsilon(1e-4));
  CHECK(student_t_975(30) == doctest::Approx(2.0423).epsilon(1e-4));
  CHECK(student_t_975(120) == doctest::Approx(1.9799).epsilon(1e-4));
  CHECK_THROWS_AS(student_t_975(0), ParameterError);
}

TEST_CASE("mean_ci95 aggregates as documented") {
  std::vector<double> values{1.0, 2.0, 3.0};
  MeanCi ci = mean_ci95(values);
  CHECK(ci.mean == doctest::Approx(2.0));
  // s = 1, hw = t_{.975,2} / sqrt(3)
  CHECK(ci.ci_halfwidth == doctest::Approx(4.3027 / std::sqrt(3.0)).epsilon(1e-4));
  CHECK_FALSE(ci.degenerate);

  std::vector<double> one{5.0};
  MeanCi single = mean_ci95(one);
  CHECK(single.mean == doctest::Approx(5.0));
  CHECK(single.ci_halfwidth == doctest::Approx(0.0));
  CHECK(single.degenerate);
}

TEST_CASE("kendall tau on simple rankings") {
  std::vector<double> a{1, 2, 3, 4};
  std::vector<double> up{10, 20, 30, 40};
  std::vector<double> down{9, 7, 5, 3};
  CHECK(kendall_tau(a, up) == doctest::Approx(1.0));
  CHECK(kendall_tau(a, down) == doctest::Approx(-1.0));
  std::vector<double> mixed{1, 3, 2, 4};
  CHECK(kendall_tau(a, mixed) == doctest::Approx(4.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("evaluate over identical glogs reports zero means and widths") {
  EventLog alog = fixture_log(4);
  std::vector<EventLog> glogs{alog, alog, alog};
  auto measures = default_measures();
  EvaluationReport report = evaluate(alog, glogs, measures);
  CHECK(report.k == 3);
  REQUIRE(report.results.size() == measures.size());
  for (const MeasureResult& r : report.results) {
    CAPTURE(measure_name(r.spec.measure));
    REQUIRE_FALSE(r.error);
    REQUIRE(r.values.size() == 3);
    CHECK(r.mean == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(r.ci_halfwidth == doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("evaluate with K=1 flags the degenerate interval") {
  EventLog alog = fixture_log(3);
  EvaluationReport report = evaluate(alog, {alog}, default_measures());
  for (const MeasureResult& r : report.results) {
    CHECK(r.degenerate_ci);
    CHECK(r.ci_halfwidth == doctest::Approx(0.0));
  }
}

TEST_CASE("a failing measure becomes an error entry; the rest still run") {
  EventLog alog = fixture_log(2);
  EventLog glog = fixture_log(3);  // unequal case count: CFLD precondition fails
  EvaluationReport report = evaluate(alog, {glog}, default_measures());
  int errors = 0;
  for (const MeasureResult& r : report.results) {
    if (r.spec.measure == Measure::Cfld) {
      REQUIRE(r.error);
      ++errors;
    } else {
      CHECK_FALSE(r.error);
      CHECK(r.values.size() == 1);
    }
  }
  CHECK(errors == 1);
  CHECK_THROWS_AS(evaluate(alog, {}, default_measures()), ParameterError);
}

TEST_CASE("evaluate mean equals the arithmetic mean of the raw values") {
  EventLog alog = fixture_log(3);
  std::vector<EventLog> glogs;
  for (int shift : {1, 2, 4}) {
    std::vector<Event> events;
    for (Event e : alog.events()) {
      e.start.epoch_s += shift * 3600;
      e.end.epoch_s += shift * 3600;
      events.push_back(std::move(e));
    }
    glogs.push_back(EventLog::from_events(std::move(events)));
  }
  std::vector<MeasureSpec> aed_only{{Measure::Aed}};
  EvaluationReport report = evaluate(alog, glogs, aed_only);
  const MeasureResult& r = report.results[0];
  REQUIRE(r.values.size() == 3);
  CHECK(r.values[0] == doctest::Approx(1.0));
  CHECK(r.values[1] == doctest::Approx(2.0));
  CHECK(r.values[2] == doctest::Approx(4.0));
  CHECK(r.mean == doctest::Approx((1.0 + 2.0 + 4.0) / 3.0).epsilon(1e-12));
  // Order invariance of the aggregate.
  std::vector<EventLog> reversed{glogs[2], glogs[1], glogs[0]};
  EvaluationReport rev = evaluate(alog, reversed, aed_only);
  CHECK(rev.results[0].mean == doctest::Approx(r.mean));
  CHECK(rev.results[0].ci_halfwidth == doctest::Approx(r.ci_halfwidth));
}

TEST_CASE("compare_kernels agrees with scaled EMD on equal-mass inputs") {
  EventLog alog = fixture_log(4);
  std::vector<EventLog> glogs;
  std::vector<Event> events;
  for (Event e : alog.events()) {
    e.start.epoch_s += 7200;
    e.end.epoch_s += 7200;
    events.push_back(std::move(e));
  }
  glogs.push_back(EventLog::from_events(std::move(events)));
  KernelComparison cmp = compare_kernels(alog, glogs);
  REQUIRE(cmp.emd.results.size() == 4);
  REQUIRE(cmp.wasserstein.results.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CAPTURE(measure_name(cmp.emd.results[i].spec.measure));
    REQUIRE_FALSE(cmp.emd.results[i].error);
    REQUIRE_FALSE(cmp.wasserstein.results[i].error);
    // Same number of observations on both sides: identical values.
    CHECK(cmp.emd.results[i].mean ==
          doctest::Approx(cmp.wasserstein.results[i].mean).epsilon(1e-9));
  }
}

TEST_CASE("report serialization is deterministic and versioned") {
  EventLog alog = fixture_log(3);
  EvaluationReport report = evaluate(alog, {alog, alog}, default_measures());
  std::string a = report_to_json_text(report);
  std::string b = report_to_json_text(report);
  CHECK(a == b);
  CHECK(a.find("\"schema_version\"") != std::string::npos);
  CHECK(a.find("\"measures\"") != std::string::npos);
  std::string text = report_to_text(report);
  CHECK(text.find("NGD") != std::string::npos);
  CHECK(text.find("CTD") != std::string::npos);
}

TEST_CASE("scenario suite smoke run: structure, determinism, rank agreement") {
  ScenarioSuiteConfig config;
  config.seed = 7;
  config.k = 2;
  config.cases = 24;
  config.with_kernel_comparison = true;
  ScenarioSuiteReport suite = run_scenario_suite(config);
  REQUIRE(suite.scenarios.size() == scenario_names().size());
  for (std::size_t i = 0; i < suite.scenarios.size(); ++i) {
    CAPTURE(suite.scenarios[i].name);
    CHECK(suite.scenarios[i].name == scenario_names()[i]);
    REQUIRE_FALSE(suite.scenarios[i].error);
    CHECK(suite.scenarios[i].report.k == 2);
    CHECK(suite.scenarios[i].report.results.size() == 7);
    REQUIRE(suite.scenarios[i].kernels);
  }
  CHECK(suite.ngd_cfld_rank_tau);
  CHECK(suite.kernel_rank_tau.size() == 4);
  // CAR under both kernels must agree exactly: equal case counts per run.
  for (const ScenarioResult& s : suite.scenarios) {
    const MeasureResult* emd_car = nullptr;
    const MeasureResult* wd_car = nullptr;
    for (const MeasureResult& r : s.kernels->emd.results)
      if (r.spec.measure == Measure::Car) emd_car = &r;
    for (const MeasureResult& r : s.kernels->wasserstein.results)
      if (r.spec.measure == Measure::Car) wd_car = &r;
    REQUIRE(emd_car);
    REQUIRE(wd_car);
    CHECK(emd_car->mean == doctest::Approx(wd_car->mean).epsilon(1e-9));
  }

  std::string once = suite_to_json_text(suite);
  std::string again = suite_to_json_text(run_scenario_suite(config));
  CHECK(once == again);
  std::string text = suite_to_text(suite);
  CHECK(text.find("GT") != std::string::npos);
  CHECK(text.find("S-G") != std::string::npos);
}
