// Command-line front end: compare, simulate, evaluate-scenarios, scenarios.
// Thin shell over the library; every behavior here is reachable through
// the public API with identical results.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "logdist/congestion.hpp"
#include "logdist/control_flow.hpp"
#include "logdist/errors.hpp"
#include "logdist/event_log.hpp"
#include "logdist/harness.hpp"
#include "logdist/scenarios.hpp"
#include "logdist/simulation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitMeasureError = 3;

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw logdist::SchemaError("cannot open output file: " + out_path);
  out << text;
  if (!out) throw logdist::SchemaError("write failed: " + out_path);
}

std::vector<logdist::MeasureSpec> parse_measures(const std::vector<std::string>& names, int ngram_n,
                                                 const std::string& kernel) {
  logdist::TransportKernel k = kernel == "1wd" ? logdist::TransportKernel::Wasserstein1
                                               : logdist::TransportKernel::Emd;
  std::vector<logdist::MeasureSpec> specs;
  if (names.empty()) {
    specs = logdist::default_measures();
    for (auto& s : specs) {
      s.ngram_n = ngram_n;
      s.kernel = k;
    }
    return specs;
  }
  for (const std::string& name : names) {
    auto m = logdist::measure_from_name(name);
    if (!m)
      throw logdist::ParameterError("unknown measure '" + name +
                                    "' (expected ngd, cfld, aed, ced, red, car or ctd)");
    specs.push_back({*m, ngram_n, k});
  }
  return specs;
}

logdist::Timestamp parse_start_flag(const std::string& text) {
  auto ts = logdist::parse_iso8601(text);
  if (!ts) throw logdist::ParameterError("bad --start timestamp (ISO-8601 expected): " + text);
  return *ts;
}

struct CompareArgs {
  std::vector<std::string> paths;
  std::vector<std::string> measures;
  int ngram_n = 2;
  std::string kernel = "emd";
  std::string out;
  std::string format;
  bool strict = false;
  std::size_t max_cases = 5000;
  logdist::ColumnMapping mapping;
  std::string time_format;
};

// Default format: JSON when the output path says so, text otherwise.
std::string effective_format(const std::string& format, const std::string& out) {
  if (!format.empty()) return format;
  return out.ends_with(".json") ? "json" : "text";
}

int run_compare(const CompareArgs& args) {
  logdist::CsvFormat csv;
  csv.time_pattern = args.time_format;
  logdist::EventLog alog = logdist::read_log(args.paths.front(), args.mapping, csv);
  std::vector<logdist::EventLog> glogs;
  for (std::size_t i = 1; i < args.paths.size(); ++i)
    glogs.push_back(logdist::read_log(args.paths[i], args.mapping, csv));
  auto specs = parse_measures(args.measures, args.ngram_n, args.kernel);
  logdist::EvaluateOptions options;
  options.max_cfld_cases = args.max_cases;
  logdist::EvaluationReport report = logdist::evaluate(alog, glogs, specs, options);
  write_output(effective_format(args.format, args.out) == "json"
                   ? logdist::report_to_json_text(report)
                   : logdist::report_to_text(report),
               args.out);
  if (args.strict) {
    for (const auto& r : report.results)
      if (r.error) {
        std::cerr << "measure " << logdist::measure_name(r.spec.measure) << " failed: " << *r.error
                  << "\n";
        return kExitMeasureError;
      }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-perspective distance measures between event logs, with a seeded "
               "business-process simulator"};
  app.require_subcommand(1);
  app.set_config("--config");

  CompareArgs cmp;
  CLI::App* compare =
      app.add_subcommand("compare", "Compare an ALog against one or more GLogs (ALog first)");
  compare->add_option("alog", cmp.paths, "ALog CSV followed by GLog CSVs")
      ->required()
      ->expected(-2);
  compare->add_option("--measures", cmp.measures, "Measures to compute (default: all seven)")
      ->delimiter(',');
  compare->add_option("--n", cmp.ngram_n, "N-gram size for NGD")->envname("LOGDIST_NGRAM_N");
  compare->add_option("--kernel", cmp.kernel, "Transport kernel for AED/CED/RED/CAR")
      ->check(CLI::IsMember({"emd", "1wd"}))
      ->envname("LOGDIST_KERNEL");
  compare->add_option("--out", cmp.out, "Output path (default: stdout)");
  compare->add_option("--format", cmp.format, "Report format")
      ->check(CLI::IsMember({"text", "json"}));
  compare->add_flag("--strict", cmp.strict, "Exit 3 when any measure reports an error");
  compare->add_option("--max-cases", cmp.max_cases,
                      "Largest case count for which CFLD materializes its matrix");
  compare->add_option("--case-col", cmp.mapping.case_id, "Case id column name");
  compare->add_option("--activity-col", cmp.mapping.activity, "Activity column name");
  compare->add_option("--start-col", cmp.mapping.start, "Start timestamp column name");
  compare->add_option("--end-col", cmp.mapping.end, "End timestamp column name");
  compare->add_option("--time-format", cmp.time_format,
                      "strptime-style timestamp pattern (default ISO-8601)");

  std::string sim_model, sim_out, sim_start;
  int sim_cases = 1000;
  std::uint64_t sim_seed = 42;
  CLI::App* simulate = app.add_subcommand("simulate", "Simulate a BPS model to a CSV event log");
  simulate->add_option("--model", sim_model, "BPS model JSON")->required();
  simulate->add_option("--cases", sim_cases, "Number of cases")->envname("LOGDIST_CASES");
  simulate->add_option("--seed", sim_seed, "RNG seed")->envname("LOGDIST_SEED");
  simulate->add_option("--start", sim_start,
                       "First-arrival instant (ISO-8601; default: model first_arrival)");
  simulate->add_option("--out", sim_out, "Output CSV path")->required();

  std::uint64_t ev_seed = 42;
  int ev_k = 10, ev_cases = 200;
  std::string ev_out, ev_format, ev_start;
  bool ev_kernels = false;
  CLI::App* evaluate = app.add_subcommand(
      "evaluate-scenarios", "Regenerate the synthetic scenario suite and score every measure");
  evaluate->add_option("--seed", ev_seed, "Base seed; all randomness derives from it")
      ->envname("LOGDIST_SEED");
  evaluate->add_option("--k", ev_k, "Simulated GLogs per scenario")->envname("LOGDIST_K");
  evaluate->add_option("--cases", ev_cases, "Cases per log (desk default 200; 1000 = full scale)")
      ->envname("LOGDIST_CASES");
  evaluate->add_option("--out", ev_out, "Output path (default: stdout)");
  evaluate->add_option("--format", ev_format, "Report format")
      ->check(CLI::IsMember({"text", "json"}));
  evaluate->add_flag("--compare-kernels", ev_kernels, "Also evaluate AED/CED/RED/CAR under 1WD");
  evaluate->add_option("--start", ev_start, "First-arrival instant override (ISO-8601)");

  std::string dump_name, dump_out;
  bool list_only = false;
  CLI::App* scenarios = app.add_subcommand("scenarios", "List or export the bundled BPS models");
  scenarios->add_flag("--list", list_only, "List scenario names");
  scenarios->add_option("--dump", dump_name, "Write one scenario's model JSON");
  scenarios->add_option("--out", dump_out, "Output path for --dump (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (compare->parsed()) return run_compare(cmp);
    if (simulate->parsed()) {
      logdist::BpsModel model = logdist::load_model(sim_model);
      logdist::SimulationConfig config;
      config.num_cases = sim_cases;
      config.seed = sim_seed;
      if (!sim_start.empty()) config.start = parse_start_flag(sim_start);
      logdist::EventLog log = logdist::simulate(model, config);
      logdist::write_log(log, sim_out);
      std::cerr << "wrote " << log.num_events() << " events / " << log.num_cases() << " cases to "
                << sim_out << "\n";
      return kExitOk;
    }
    if (evaluate->parsed()) {
      logdist::ScenarioSuiteConfig config;
      config.seed = ev_seed;
      config.k = ev_k;
      config.cases = ev_cases;
      config.with_kernel_comparison = ev_kernels;
      if (!ev_start.empty()) config.start = parse_start_flag(ev_start);
      logdist::ScenarioSuiteReport report = logdist::run_scenario_suite(config);
      write_output(effective_format(ev_format, ev_out) == "json"
                       ? logdist::suite_to_json_text(report)
                       : logdist::suite_to_text(report),
                   ev_out);
      return kExitOk;
    }
    if (scenarios->parsed()) {
      if (!dump_name.empty()) {
        std::string text = logdist::model_to_json_text(logdist::scenario(dump_name));
        write_output(text, dump_out);
      } else {
        for (const std::string& name : logdist::scenario_names()) std::cout << name << "\n";
      }
      return kExitOk;
    }
  } catch (const logdist::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitOk;
}
