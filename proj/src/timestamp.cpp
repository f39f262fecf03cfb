#include "logdist/timestamp.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>

namespace logdist {

namespace {

// 1970-01-01 was a Thursday; Monday-based index 3.
constexpr std::int64_t kEpochWeekdayMon0 = 3;

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

// Whole days since epoch for a civil date, via std::chrono's calendar.
std::optional<std::int64_t> days_from_civil(int y, int m, int d) {
  std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(m)},
                                  std::chrono::day{unsigned(d)}};
  if (!ymd.ok()) return std::nullopt;
  return std::chrono::sys_days{ymd}.time_since_epoch().count();
}

void civil_from_days(std::int64_t days, int& y, unsigned& m, unsigned& d) {
  std::chrono::year_month_day ymd{std::chrono::sys_days{std::chrono::days{days}}};
  y = int(ymd.year());
  m = unsigned(ymd.month());
  d = unsigned(ymd.day());
}

struct CivilFields {
  int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;
  std::int32_t offset_s = 0;
  bool have_offset = false;
};

std::optional<Timestamp> assemble(const CivilFields& f) {
  if (f.month < 1 || f.month > 12 || f.day < 1 || f.day > 31) return std::nullopt;
  if (f.hour < 0 || f.hour > 23 || f.minute < 0 || f.minute > 59 || f.second < 0 || f.second > 60)
    return std::nullopt;
  auto days = days_from_civil(f.year, f.month, f.day);
  if (!days) return std::nullopt;
  std::int64_t local = *days * 86400 + f.hour * 3600 + f.minute * 60 + f.second;
  return Timestamp{local - f.offset_s, f.offset_s};
}

// Parses Z / +HH:MM / +HHMM / +HH starting at text[pos]; consumes to the end.
bool parse_offset(std::string_view text, std::size_t pos, std::int32_t& offset_s) {
  if (pos >= text.size()) return false;
  if (text[pos] == 'Z' || text[pos] == 'z') {
    offset_s = 0;
    return pos + 1 == text.size();
  }
  int sign = text[pos] == '+' ? 1 : text[pos] == '-' ? -1 : 0;
  if (sign == 0) return false;
  std::string_view rest = text.substr(pos + 1);
  int hh = 0, mm = 0;
  if (rest.size() == 5 && rest[2] == ':') {
    if (!parse_int(rest.substr(0, 2), hh) || !parse_int(rest.substr(3, 2), mm)) return false;
  } else if (rest.size() == 4) {
    if (!parse_int(rest.substr(0, 2), hh) || !parse_int(rest.substr(2, 2), mm)) return false;
  } else if (rest.size() == 2) {
    if (!parse_int(rest, hh)) return false;
  } else {
    return false;
  }
  if (hh > 18 || mm > 59) return false;
  offset_s = sign * (hh * 3600 + mm * 60);
  return true;
}

}  // namespace

int local_weekday(const Timestamp& ts) {
  std::int64_t days = floor_div(ts.local_s(), 86400);
  return int(floor_mod(days + kEpochWeekdayMon0, 7));
}

int local_hour_of_day(const Timestamp& ts) {
  return int(floor_mod(ts.local_s(), 86400) / 3600);
}

std::optional<Timestamp> parse_iso8601(std::string_view text) {
  // Minimum "YYYY-MM-DDTHH:MM:SS" is 19 chars.
  if (text.size() < 19) return std::nullopt;
  if (text[4] != '-' || text[7] != '-' || (text[10] != 'T' && text[10] != ' ') ||
      text[13] != ':' || text[16] != ':')
    return std::nullopt;
  CivilFields f;
  if (!parse_int(text.substr(0, 4), f.year) || !parse_int(text.substr(5, 2), f.month) ||
      !parse_int(text.substr(8, 2), f.day) || !parse_int(text.substr(11, 2), f.hour) ||
      !parse_int(text.substr(14, 2), f.minute) || !parse_int(text.substr(17, 2), f.second))
    return std::nullopt;
  std::size_t pos = 19;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;  // truncate fractional seconds
    std::size_t digits = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos, ++digits;
    if (digits == 0) return std::nullopt;
  }
  if (pos < text.size()) {
    if (!parse_offset(text, pos, f.offset_s)) return std::nullopt;
  }
  return assemble(f);
}

std::optional<Timestamp> parse_timestamp(std::string_view text, std::string_view pattern) {
  if (pattern.empty()) return parse_iso8601(text);
  CivilFields f;
  f.year = 1970;
  f.month = 1;
  f.day = 1;
  std::size_t ti = 0;
  for (std::size_t pi = 0; pi < pattern.size(); ++pi) {
    char pc = pattern[pi];
    if (pc != '%') {
      if (ti >= text.size() || text[ti] != pc) return std::nullopt;
      ++ti;
      continue;
    }
    if (++pi >= pattern.size()) return std::nullopt;
    char spec = pattern[pi];
    if (spec == '%') {
      if (ti >= text.size() || text[ti] != '%') return std::nullopt;
      ++ti;
      continue;
    }
    if (spec == 'z') {
      std::int32_t off = 0;
      if (!parse_offset(text, ti, off)) return std::nullopt;
      f.offset_s = off;
      ti = text.size();
      continue;
    }
    std::size_t width = spec == 'Y' ? 4 : 2;
    if (ti + width > text.size()) return std::nullopt;
    int value = 0;
    if (!parse_int(text.substr(ti, width), value)) return std::nullopt;
    ti += width;
    switch (spec) {
      case 'Y': f.year = value; break;
      case 'm': f.month = value; break;
      case 'd': f.day = value; break;
      case 'H': f.hour = value; break;
      case 'M': f.minute = value; break;
      case 'S': f.second = value; break;
      default: return std::nullopt;
    }
  }
  if (ti != text.size()) return std::nullopt;
  return assemble(f);
}

std::string format_iso8601(const Timestamp& ts) {
  std::int64_t local = ts.local_s();
  std::int64_t days = floor_div(local, 86400);
  std::int64_t sod = floor_mod(local, 86400);
  int y;
  unsigned m, d;
  civil_from_days(days, y, m, d);
  int off = ts.offset_s;
  char sign = off < 0 ? '-' : '+';
  int aoff = off < 0 ? -off : off;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02d%c%02d:%02d", y, m, d,
                int(sod / 3600), int((sod % 3600) / 60), int(sod % 60), sign, aoff / 3600,
                (aoff % 3600) / 60);
  return buf;
}

}  // namespace logdist
