#include "ldpower/time.hpp"

#include "ldpower/error.hpp"

#include <cstdio>
#include <string>

namespace ldpower {

Timestamp parse_timestamp(std::string_view text) {
    std::string s(text);
    if (!s.empty() && (s.back() == 'Z' || s.back() == 'z')) s.pop_back();
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
    int consumed = 0;
    bool ok = false;
    if (s.size() == 10) {
        ok = std::sscanf(s.c_str(), "%4d-%2d-%2d%n", &y, &mo, &d, &consumed) == 3;
    } else if (s.size() == 19 && (s[10] == 'T' || s[10] == ' ')) {
        ok = std::sscanf(s.c_str(), "%4d-%2d-%2d%*c%2d:%2d:%2d%n", &y, &mo, &d, &h, &mi, &sec,
                         &consumed) == 6;
    }
    using namespace std::chrono;
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ok || consumed != static_cast<int>(s.size()) || !ymd.ok() || h > 23 || mi > 59 || sec > 59)
        throw InvalidInput("malformed timestamp '" + std::string(text) + "'");
    return sys_days{ymd} + hours{h} + minutes{mi} + seconds{sec};
}

std::string format_timestamp(Timestamp t) {
    using namespace std::chrono;
    const auto day_start = floor<days>(t);
    const year_month_day ymd{day_start};
    const hh_mm_ss hms{t - day_start};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02lld:%02lld:%02lldZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<long long>(hms.hours().count()),
                  static_cast<long long>(hms.minutes().count()),
                  static_cast<long long>(hms.seconds().count()));
    return buf;
}

std::string format_date(Timestamp t) {
    return format_timestamp(t).substr(0, 10);
}

} // namespace ldpower
