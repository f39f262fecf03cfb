#include "logdist/temporal.hpp"

#include <array>

#include "logdist/errors.hpp"

namespace logdist {

namespace {

void require_non_empty(const EventLog& log, const char* which, const char* measure) {
  if (log.empty())
    throw ParameterError(std::string(measure) + " is undefined for an empty " + which + " log");
}

std::vector<std::int64_t> absolute_hour_bins(const EventLog& log) {
  std::vector<std::int64_t> bins;
  bins.reserve(2 * log.num_events());
  for (const Event& e : log.events()) {
    bins.push_back(hour_bin(e.start));
    bins.push_back(hour_bin(e.end));
  }
  return bins;
}

double scaled_distance(const std::vector<std::int64_t>& abins,
                       const std::vector<std::int64_t>& gbins, TransportKernel kernel) {
  Histogram1D ha = histogram_from_bins(abins);
  Histogram1D hg = histogram_from_bins(gbins);
  if (kernel == TransportKernel::Wasserstein1) return wasserstein_1(ha, hg);
  return emd_1d(ha, hg) / double(abins.size());
}

}  // namespace

std::int64_t hour_bin(const Timestamp& ts) { return floor_div(ts.epoch_s, 3600); }

double aed(const EventLog& alog, const EventLog& glog, TransportKernel kernel) {
  require_non_empty(alog, "first", "aed");
  require_non_empty(glog, "second", "aed");
  return scaled_distance(absolute_hour_bins(alog), absolute_hour_bins(glog), kernel);
}

double ced(const EventLog& alog, const EventLog& glog, TransportKernel kernel) {
  require_non_empty(alog, "first", "ced");
  require_non_empty(glog, "second", "ced");
  // Hour-of-day bins per local weekday; start and end timestamps both count.
  std::array<std::vector<std::int64_t>, 7> abins, gbins;
  auto scatter = [](const EventLog& log, std::array<std::vector<std::int64_t>, 7>& out) {
    for (const Event& e : log.events()) {
      out[std::size_t(local_weekday(e.start))].push_back(local_hour_of_day(e.start));
      out[std::size_t(local_weekday(e.end))].push_back(local_hour_of_day(e.end));
    }
  };
  scatter(alog, abins);
  scatter(glog, gbins);
  double sum = 0.0;
  for (int wd = 0; wd < 7; ++wd) {
    const auto& a = abins[std::size_t(wd)];
    const auto& g = gbins[std::size_t(wd)];
    if (a.empty() && g.empty()) continue;  // weekday contributes 0
    if (a.empty() || g.empty()) {
      sum += 24.0;  // work exists in one log only: maximum displacement
      continue;
    }
    sum += scaled_distance(a, g, kernel);
  }
  return sum / 7.0;
}

double red(const EventLog& alog, const EventLog& glog, TransportKernel kernel) {
  require_non_empty(alog, "first", "red");
  require_non_empty(glog, "second", "red");
  auto relative_bins = [](const EventLog& log) {
    std::vector<std::int64_t> bins;
    bins.reserve(2 * log.num_events());
    for (const std::string& cid : log.case_ids()) {
      std::int64_t arrival = log.case_arrival(cid).epoch_s;
      for (std::size_t i : log.case_events(cid)) {
        const Event& e = log.events()[i];
        bins.push_back(floor_div(e.start.epoch_s - arrival, 3600));
        bins.push_back(floor_div(e.end.epoch_s - arrival, 3600));
      }
    }
    return bins;
  };
  return scaled_distance(relative_bins(alog), relative_bins(glog), kernel);
}

}  // namespace logdist
