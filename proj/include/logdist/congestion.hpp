#pragma once

#include "logdist/event_log.hpp"
#include "logdist/temporal.hpp"

namespace logdist {

/// Case arrival rate distance: per-case arrival timestamps binned by
/// date-hour. Under the Emd kernel the raw distance is scaled by the
/// first log's case count. Result in hours.
double car(const EventLog& alog, const EventLog& glog, TransportKernel kernel = TransportKernel::Emd);

/// Cycle time distribution distance: per-case cycle times in hourly
/// duration bins, compared as unit-normalized distributions (1WD).
/// Symmetric; result in hours.
double ctd(const EventLog& alog, const EventLog& glog);

}  // namespace logdist
