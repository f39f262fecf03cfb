#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace logdist {

/// Second-precision timestamp: a UTC instant plus the UTC offset it was
/// originally written with. Instants order and compare by epoch second;
/// the offset is kept so logs round-trip byte-for-byte and so circadian
/// measures can work in the log's own local civil time.
struct Timestamp {
  std::int64_t epoch_s = 0;   // seconds since 1970-01-01T00:00:00Z
  std::int32_t offset_s = 0;  // original UTC offset, seconds east of UTC

  std::int64_t local_s() const { return epoch_s + offset_s; }

  friend bool operator==(const Timestamp&, const Timestamp&) = default;
};

/// Weekday of the timestamp's local civil date, Monday = 0 .. Sunday = 6.
int local_weekday(const Timestamp& ts);

/// Hour of the timestamp's local civil day, 0..23.
int local_hour_of_day(const Timestamp& ts);

/// Parses ISO-8601 `YYYY-MM-DD[T ]HH:MM:SS[.frac][Z|+HH:MM|+HHMM|+HH]`.
/// Fractional seconds are truncated; a missing offset means UTC.
std::optional<Timestamp> parse_iso8601(std::string_view text);

/// Parses with a strptime-style pattern supporting %Y %m %d %H %M %S %z %%.
/// A pattern without %z yields UTC timestamps.
std::optional<Timestamp> parse_timestamp(std::string_view text, std::string_view pattern);

/// Formats as `YYYY-MM-DDTHH:MM:SS+HH:MM` in the timestamp's own offset.
std::string format_iso8601(const Timestamp& ts);

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t floor_mod(std::int64_t a, std::int64_t b) { return a - floor_div(a, b) * b; }

}  // namespace logdist
