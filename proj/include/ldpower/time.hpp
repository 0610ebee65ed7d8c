#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace ldpower {

using Timestamp = std::chrono::sys_seconds;

// Accepts "YYYY-MM-DD", "YYYY-MM-DDTHH:MM:SS" with optional trailing "Z".
Timestamp parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp t);
std::string format_date(Timestamp t);

inline Timestamp start_of_day(Timestamp t) {
    return std::chrono::floor<std::chrono::days>(t);
}

} // namespace ldpower
