#include "logdist/congestion.hpp"

#include "logdist/errors.hpp"
#include "logdist/kernels.hpp"

namespace logdist {

namespace {

std::vector<std::int64_t> arrival_bins(const EventLog& log) {
  std::vector<std::int64_t> bins;
  bins.reserve(log.num_cases());
  for (const std::string& cid : log.case_ids()) bins.push_back(hour_bin(log.case_arrival(cid)));
  return bins;
}

std::vector<std::int64_t> cycle_time_bins(const EventLog& log) {
  std::vector<std::int64_t> bins;
  bins.reserve(log.num_cases());
  for (const std::string& cid : log.case_ids()) bins.push_back(log.cycle_time_s(cid) / 3600);
  return bins;
}

}  // namespace

double car(const EventLog& alog, const EventLog& glog, TransportKernel kernel) {
  if (alog.empty() || glog.empty()) throw ParameterError("car is undefined for an empty log");
  Histogram1D ha = histogram_from_bins(arrival_bins(alog));
  Histogram1D hg = histogram_from_bins(arrival_bins(glog));
  if (kernel == TransportKernel::Wasserstein1) return wasserstein_1(ha, hg);
  return emd_1d(ha, hg) / double(alog.num_cases());
}

double ctd(const EventLog& alog, const EventLog& glog) {
  if (alog.empty() || glog.empty()) throw ParameterError("ctd is undefined for an empty log");
  Histogram1D ha = histogram_from_bins(cycle_time_bins(alog));
  Histogram1D hg = histogram_from_bins(cycle_time_bins(glog));
  return wasserstein_1(ha, hg);
}

}  // namespace logdist
