#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace sbs {

using Timestamp = std::chrono::sys_seconds;

// Accepts ISO-8601 dates and date-times:
//   2021-03-05
//   2021-03-05T10:15:00[.fff][Z|+hh:mm|-hh:mm|+hhmm]
// A space may stand in for 'T'. Times without an offset are taken as UTC.
// Fractional seconds are truncated.
std::optional<Timestamp> parse_timestamp(std::string_view text);

// "2021-03-05T10:15:00Z"
std::string format_timestamp(Timestamp ts);

// "2021-03-05"
std::string format_date(std::chrono::sys_days day);

}  // namespace sbs
