#include "logdist/harness.hpp"

#include <algorithm>

#include "logdist/congestion.hpp"
#include "logdist/control_flow.hpp"
#include "logdist/errors.hpp"
#include "logdist/rng.hpp"
#include "logdist/scenarios.hpp"
#include "logdist/stats.hpp"

namespace logdist {

namespace {

constexpr std::uint64_t kAlogSeedTag = 0x41;
constexpr std::uint64_t kArrivalSeedTag = 0xA2;

double run_measure(const MeasureSpec& spec, const EventLog& alog, const EventLog& glog,
                   const EvaluateOptions& options) {
  switch (spec.measure) {
    case Measure::Ngd: return ngd(alog, glog, spec.ngram_n);
    case Measure::Cfld: return cfld(alog, glog, {options.max_cfld_cases});
    case Measure::Aed: return aed(alog, glog, spec.kernel);
    case Measure::Ced: return ced(alog, glog, spec.kernel);
    case Measure::Red: return red(alog, glog, spec.kernel);
    case Measure::Car: return car(alog, glog, spec.kernel);
    case Measure::Ctd: return ctd(alog, glog);
  }
  throw ParameterError("unknown measure");
}

std::optional<double> mean_of(const EvaluationReport& report, Measure m) {
  for (const MeasureResult& r : report.results)
    if (r.spec.measure == m && !r.error) return r.mean;
  return std::nullopt;
}

}  // namespace

std::string measure_name(Measure m) {
  switch (m) {
    case Measure::Ngd: return "ngd";
    case Measure::Cfld: return "cfld";
    case Measure::Aed: return "aed";
    case Measure::Ced: return "ced";
    case Measure::Red: return "red";
    case Measure::Car: return "car";
    case Measure::Ctd: return "ctd";
  }
  return "?";
}

std::optional<Measure> measure_from_name(std::string_view name) {
  if (name == "ngd") return Measure::Ngd;
  if (name == "cfld") return Measure::Cfld;
  if (name == "aed") return Measure::Aed;
  if (name == "ced") return Measure::Ced;
  if (name == "red") return Measure::Red;
  if (name == "car") return Measure::Car;
  if (name == "ctd") return Measure::Ctd;
  return std::nullopt;
}

std::vector<MeasureSpec> default_measures() {
  std::vector<MeasureSpec> out;
  for (Measure m : {Measure::Ngd, Measure::Cfld, Measure::Aed, Measure::Ced, Measure::Red,
                    Measure::Car, Measure::Ctd})
    out.push_back({m});
  return out;
}

EvaluationReport evaluate(const EventLog& alog, const std::vector<EventLog>& glogs,
                          std::span<const MeasureSpec> measures, const EvaluateOptions& options) {
  if (glogs.empty()) throw ParameterError("evaluate requires at least one GLog");
  EvaluationReport report;
  report.k = glogs.size();
  for (const MeasureSpec& spec : measures) {
    MeasureResult result;
    result.spec = spec;
    try {
      for (const EventLog& glog : glogs)
        result.values.push_back(run_measure(spec, alog, glog, options));
      MeanCi ci = mean_ci95(result.values);
      result.mean = ci.mean;
      result.ci_halfwidth = ci.ci_halfwidth;
      result.degenerate_ci = ci.degenerate;
    } catch (const Error& e) {
      result.values.clear();
      result.error = e.what();
    }
    report.results.push_back(std::move(result));
  }
  return report;
}

KernelComparison compare_kernels(const EventLog& alog, const std::vector<EventLog>& glogs,
                                 const EvaluateOptions& options) {
  KernelComparison cmp;
  std::vector<MeasureSpec> emd_specs, wd_specs;
  for (Measure m : {Measure::Aed, Measure::Ced, Measure::Red, Measure::Car}) {
    emd_specs.push_back({m, 2, TransportKernel::Emd});
    wd_specs.push_back({m, 2, TransportKernel::Wasserstein1});
  }
  cmp.emd = evaluate(alog, glogs, emd_specs, options);
  cmp.wasserstein = evaluate(alog, glogs, wd_specs, options);
  return cmp;
}

ScenarioSuiteReport run_scenario_suite(const ScenarioSuiteConfig& config) {
  ScenarioSuiteReport suite;
  suite.config = config;
  const std::uint64_t arrival_seed = mix_seed(config.seed, kArrivalSeedTag);

  SimulationConfig alog_config;
  alog_config.num_cases = config.cases;
  alog_config.seed = mix_seed(config.seed, kAlogSeedTag);
  alog_config.arrival_seed = arrival_seed;
  alog_config.start = config.start;
  const EventLog alog = simulate(scenario("GT"), alog_config);

  const auto measures = default_measures();
  const auto& names = scenario_names();
  for (std::size_t s = 0; s < names.size(); ++s) {
    ScenarioResult result;
    result.name = names[s];
    try {
      const BpsModel model = scenario(names[s]);
      std::vector<EventLog> glogs;
      glogs.reserve(std::size_t(config.k));
      for (int k = 0; k < config.k; ++k) {
        SimulationConfig run;
        run.num_cases = config.cases;
        run.seed = mix_seed(mix_seed(config.seed, s + 1), std::uint64_t(k + 1));
        run.arrival_seed = arrival_seed;
        run.start = config.start;
        glogs.push_back(simulate(model, run));
      }
      result.report = evaluate(alog, glogs, measures, config.evaluate_options);
      if (config.with_kernel_comparison)
        result.kernels = compare_kernels(alog, glogs, config.evaluate_options);
    } catch (const Error& e) {
      result.error = e.what();
    }
    suite.scenarios.push_back(std::move(result));
  }

  // Rank agreement across scenarios.
  std::vector<double> ngd_means, cfld_means;
  for (const ScenarioResult& r : suite.scenarios) {
    if (r.error) continue;
    auto n = mean_of(r.report, Measure::Ngd);
    auto c = mean_of(r.report, Measure::Cfld);
    if (n && c) {
      ngd_means.push_back(*n);
      cfld_means.push_back(*c);
    }
  }
  if (ngd_means.size() >= 2) suite.ngd_cfld_rank_tau = kendall_tau(ngd_means, cfld_means);

  if (config.with_kernel_comparison) {
    for (Measure m : {Measure::Aed, Measure::Ced, Measure::Red, Measure::Car}) {
      std::vector<double> emd_means, wd_means;
      for (const ScenarioResult& r : suite.scenarios) {
        if (r.error || !r.kernels) continue;
        auto e = mean_of(r.kernels->emd, m);
        auto w = mean_of(r.kernels->wasserstein, m);
        if (e && w) {
          emd_means.push_back(*e);
          wd_means.push_back(*w);
        }
      }
      if (emd_means.size() >= 2)
        suite.kernel_rank_tau[measure_name(m)] = kendall_tau(emd_means, wd_means);
    }
  }
  return suite;
}

}  // namespace logdist
