#include <algorithm>
#include <cctype>
#include <cstdio>
#include <json.hpp>
#include <sstream>

#include "logdist/harness.hpp"

namespace logdist {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

const char* kernel_name(TransportKernel k) {
  return k == TransportKernel::Emd ? "emd" : "wasserstein_1";
}

bool uses_kernel(Measure m) {
  return m == Measure::Aed || m == Measure::Ced || m == Measure::Red || m == Measure::Car;
}

json result_to_json(const MeasureResult& r) {
  json j;
  j["id"] = measure_name(r.spec.measure);
  if (r.spec.measure == Measure::Ngd) j["n"] = r.spec.ngram_n;
  if (uses_kernel(r.spec.measure)) j["kernel"] = kernel_name(r.spec.kernel);
  if (r.error) {
    j["error"] = *r.error;
    return j;
  }
  j["values"] = r.values;
  j["mean"] = r.mean;
  j["ci95_halfwidth"] = r.ci_halfwidth;
  if (r.degenerate_ci) j["degenerate_ci"] = true;
  return j;
}

json report_to_json(const EvaluationReport& report) {
  json j;
  j["k"] = report.k;
  json measures = json::array();
  for (const MeasureResult& r : report.results) measures.push_back(result_to_json(r));
  j["measures"] = measures;
  return j;
}

std::string cell(const MeasureResult* r) {
  if (!r) return "-";
  if (r->error) return "error";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f (\xC2\xB1%.2f)", r->mean, r->ci_halfwidth);
  return buf;
}

const MeasureResult* find_result(const EvaluationReport& report, Measure m) {
  for (const MeasureResult& r : report.results)
    if (r.spec.measure == m) return &r;
  return nullptr;
}

constexpr Measure kCanonicalOrder[] = {Measure::Ngd, Measure::Cfld, Measure::Aed, Measure::Ced,
                                       Measure::Red, Measure::Car,  Measure::Ctd};

std::string upper(std::string s) {
  for (char& c : s) c = char(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

void append_row(std::ostringstream& out, const std::string& head,
                const std::vector<std::string>& cells, std::size_t head_w,
                const std::vector<std::size_t>& widths) {
  out << head;
  for (std::size_t i = head.size(); i < head_w; ++i) out << ' ';
  for (std::size_t c = 0; c < cells.size(); ++c) {
    out << "  " << cells[c];
    // UTF-8 aware padding: the +- sign is 2 bytes but 1 column.
    std::size_t display = cells[c].size() - (cells[c].find("\xC2\xB1") != std::string::npos ? 1 : 0);
    for (std::size_t i = display; i < widths[c]; ++i) out << ' ';
  }
  out << '\n';
}

}  // namespace

std::string report_to_json_text(const EvaluationReport& report) {
  json j = report_to_json(report);
  j["schema_version"] = kSchemaVersion;
  return j.dump(2) + "\n";
}

std::string report_to_text(const EvaluationReport& report) {
  std::ostringstream out;
  out << "k = " << report.k << "\n";
  for (const MeasureResult& r : report.results) {
    std::string label = upper(measure_name(r.spec.measure));
    if (r.spec.measure == Measure::Ngd) label += " (n=" + std::to_string(r.spec.ngram_n) + ")";
    if (uses_kernel(r.spec.measure)) label += std::string(" [") + kernel_name(r.spec.kernel) + "]";
    out << label << ": ";
    if (r.error)
      out << "error: " << *r.error;
    else
      out << cell(&r);
    out << '\n';
  }
  return out.str();
}

std::string suite_to_json_text(const ScenarioSuiteReport& suite) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["seed"] = suite.config.seed;
  j["k"] = suite.config.k;
  j["cases"] = suite.config.cases;
  json scenarios = json::array();
  for (const ScenarioResult& s : suite.scenarios) {
    json sj;
    sj["name"] = s.name;
    if (s.error) {
      sj["error"] = *s.error;
    } else {
      sj["report"] = report_to_json(s.report);
      if (s.kernels) {
        sj["kernel_comparison"] = {{"emd", report_to_json(s.kernels->emd)},
                                   {"wasserstein_1", report_to_json(s.kernels->wasserstein)}};
      }
    }
    scenarios.push_back(sj);
  }
  j["scenarios"] = scenarios;
  if (suite.ngd_cfld_rank_tau) j["rank_agreement"]["ngd_vs_cfld_tau"] = *suite.ngd_cfld_rank_tau;
  for (const auto& [m, tau] : suite.kernel_rank_tau)
    j["rank_agreement"]["emd_vs_wasserstein_tau"][m] = tau;
  return j.dump(2) + "\n";
}

std::string suite_to_text(const ScenarioSuiteReport& suite) {
  std::ostringstream out;
  out << "scenario suite: seed=" << suite.config.seed << " k=" << suite.config.k
      << " cases=" << suite.config.cases << "\n\n";

  std::vector<std::string> heads = {"scenario"};
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header_cells;
  for (Measure m : kCanonicalOrder) header_cells.push_back(upper(measure_name(m)));
  for (const ScenarioResult& s : suite.scenarios) {
    std::vector<std::string> cells;
    if (s.error) {
      cells.assign(header_cells.size(), "failed");
    } else {
      for (Measure m : kCanonicalOrder) cells.push_back(cell(find_result(s.report, m)));
    }
    rows.push_back(std::move(cells));
  }
  std::size_t head_w = 8;
  for (const ScenarioResult& s : suite.scenarios) head_w = std::max(head_w, s.name.size());
  std::vector<std::size_t> widths(header_cells.size());
  for (std::size_t c = 0; c < widths.size(); ++c) {
    widths[c] = header_cells[c].size();
    for (const auto& row : rows) {
      std::size_t display = row[c].size() - (row[c].find("\xC2\xB1") != std::string::npos ? 1 : 0);
      widths[c] = std::max(widths[c], display);
    }
  }
  append_row(out, "scenario", header_cells, head_w, widths);
  for (std::size_t s = 0; s < suite.scenarios.size(); ++s)
    append_row(out, suite.scenarios[s].name, rows[s], head_w, widths);
  if (suite.ngd_cfld_rank_tau) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", *suite.ngd_cfld_rank_tau);
    out << "\nNGD vs CFLD scenario-rank Kendall tau: " << buf << "\n";
  }
  for (const auto& [m, tau] : suite.kernel_rank_tau) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", tau);
    out << "EMD vs 1WD scenario-rank Kendall tau [" << upper(m) << "]: " << buf << "\n";
  }
  return out.str();
}

}  // namespace logdist
