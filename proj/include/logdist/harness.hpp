#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "logdist/event_log.hpp"
#include "logdist/temporal.hpp"

namespace logdist {

enum class Measure { Ngd, Cfld, Aed, Ced, Red, Car, Ctd };

struct MeasureSpec {
  Measure measure = Measure::Ngd;
  int ngram_n = 2;                                     // NGD only
  TransportKernel kernel = TransportKernel::Emd;       // AED/CED/RED/CAR only
};

std::string measure_name(Measure m);
std::optional<Measure> measure_from_name(std::string_view name);

/// All seven measures with default parameters, in canonical order.
std::vector<MeasureSpec> default_measures();

struct MeasureResult {
  MeasureSpec spec;
  std::vector<double> values;  // one raw value per GLog, in run order
  double mean = 0.0;
  double ci_halfwidth = 0.0;   // Student-t 95%; 0 when k == 1
  bool degenerate_ci = false;  // k == 1
  std::optional<std::string> error;  // set when the measure could not run
};

struct EvaluationReport {
  std::size_t k = 0;
  std::vector<MeasureResult> results;
};

struct EvaluateOptions {
  std::size_t max_cfld_cases = 5000;
};

/// Computes every requested measure K times as distance(alog, glog_k) and
/// aggregates mean and 95% CI half-width. A failing measure becomes an
/// error entry in the report; the other measures still run.
EvaluationReport evaluate(const EventLog& alog, const std::vector<EventLog>& glogs,
                          std::span<const MeasureSpec> measures,
                          const EvaluateOptions& options = {});

/// AED/CED/RED/CAR evaluated under both transport kernels, for kernel
/// agreement analysis.
struct KernelComparison {
  EvaluationReport emd;
  EvaluationReport wasserstein;
};
KernelComparison compare_kernels(const EventLog& alog, const std::vector<EventLog>& glogs,
                                 const EvaluateOptions& options = {});

/// Full synthetic protocol: one ALog simulated from GT, K GLogs per
/// scenario, all measures; the arrival stream is shared across every run
/// so scenarios that keep the arrival model reproduce its arrivals
/// exactly.
struct ScenarioSuiteConfig {
  std::uint64_t seed = 42;
  int k = 10;
  int cases = 200;
  bool with_kernel_comparison = false;
  std::optional<Timestamp> start;  // defaults to the model's first_arrival
  EvaluateOptions evaluate_options;
};

struct ScenarioResult {
  std::string name;
  EvaluationReport report;
  std::optional<KernelComparison> kernels;
  std::optional<std::string> error;  // simulation failure; report is empty
};

struct ScenarioSuiteReport {
  ScenarioSuiteConfig config;
  std::vector<ScenarioResult> scenarios;  // canonical scenario order
  /// Kendall tau between scenario rankings by mean NGD and by mean CFLD.
  std::optional<double> ngd_cfld_rank_tau;
  /// Per measure: Kendall tau between scenario rankings under EMD and 1WD
  /// (present when the kernel comparison ran).
  std::map<std::string, double> kernel_rank_tau;
};

ScenarioSuiteReport run_scenario_suite(const ScenarioSuiteConfig& config);

/// Report serialization. JSON output is deterministic byte-for-byte for
/// identical inputs; the schema is versioned (see docs/report-schema.md).
std::string report_to_json_text(const EvaluationReport& report);
std::string report_to_text(const EvaluationReport& report);
std::string suite_to_json_text(const ScenarioSuiteReport& report);
std::string suite_to_text(const ScenarioSuiteReport& report);

}  // namespace logdist
