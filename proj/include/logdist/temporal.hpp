#pragma once

#include "logdist/event_log.hpp"
#include "logdist/kernels.hpp"

namespace logdist {

/// Transport kernel behind the EMD-based measures. Emd is the unbalanced
/// raw distance scaled by the first log's observation count; Wasserstein1
/// compares unit-normalized histograms and needs no count scaling.
enum class TransportKernel { Emd, Wasserstein1 };

/// Hour bin of a timestamp on the absolute timeline (UTC hours).
std::int64_t hour_bin(const Timestamp& ts);

/// Absolute event distribution distance: all start and end timestamps
/// binned by date-hour over the joint timeline. The first argument is the
/// reference log (ALog); under the Emd kernel the raw distance is divided
/// by its observation count (2 x events). Result in hours.
double aed(const EventLog& alog, const EventLog& glog, TransportKernel kernel = TransportKernel::Emd);

/// Circadian event distribution distance: timestamps partitioned by local
/// weekday, binned by local hour of day, per-weekday distance averaged
/// over the 7 weekdays. A weekday empty in both logs contributes 0; a
/// weekday empty in exactly one contributes the maximum hour-of-day
/// displacement of 24. Result in hours.
double ced(const EventLog& alog, const EventLog& glog, TransportKernel kernel = TransportKernel::Emd);

/// Relative event distribution distance: timestamps offset from their
/// case's arrival time and binned into hourly durations. Result in hours.
double red(const EventLog& alog, const EventLog& glog, TransportKernel kernel = TransportKernel::Emd);

}  // namespace logdist
