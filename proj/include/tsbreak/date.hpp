#pragma once

#include <chrono>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

#include "tsbreak/error.hpp"

namespace tsbreak {

// Calendar dates are plain day counts (std::chrono::sys_days). Detection runs
// on integer positions; dates matter only for reports and RAG retrieval.
using Date = std::chrono::sys_days;

inline std::optional<Date> try_parse_date(std::string_view s) {
    // ISO-8601 calendar date, YYYY-MM-DD. Also accepts YYYY/MM/DD and a bare
    // YYYY (mapped to Jan 1) so annual series keep a usable date axis.
    int y = 0, m = 1, d = 1;
    int n = static_cast<int>(s.size());
    if (n == 10 && (s[4] == '-' || s[4] == '/') && (s[7] == '-' || s[7] == '/')) {
        if (std::sscanf(std::string(s).c_str(), "%4d%*c%2d%*c%2d", &y, &m, &d) != 3)
            return std::nullopt;
    } else if (n == 7 && (s[4] == '-' || s[4] == '/')) {
        if (std::sscanf(std::string(s).c_str(), "%4d%*c%2d", &y, &m) != 2)
            return std::nullopt;
    } else if (n == 4) {
        if (std::sscanf(std::string(s).c_str(), "%4d", &y) != 1)
            return std::nullopt;
    } else {
        return std::nullopt;
    }
    std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(m)},
                                    std::chrono::day{unsigned(d)}};
    if (!ymd.ok())
        return std::nullopt;
    return Date{std::chrono::sys_days{ymd}};
}

inline Date parse_date(std::string_view s) {
    auto d = try_parse_date(s);
    if (!d)
        throw Error("invalid date: '" + std::string(s) + "' (expected YYYY-MM-DD)");
    return *d;
}

inline std::string format_date(Date d) {
    std::chrono::year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", int(ymd.year()),
                  unsigned(ymd.month()), unsigned(ymd.day()));
    return buf;
}

// Signed day distance b - a.
inline long days_between(Date a, Date b) {
    return (b - a).count();
}

} // namespace tsbreak
