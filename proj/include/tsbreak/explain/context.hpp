#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "tsbreak/ensemble.hpp"
#include "tsbreak/stats.hpp"
#include "tsbreak/time_series.hpp"

namespace tsbreak {

struct WindowStats {
    double mean = 0.0;
    double std = 0.0;
    std::string trend; // increasing | decreasing | flat
};

struct BreakContext {
    std::string break_date;
    double confidence = 0.0;
    double magnitude = 0.0;
    std::string direction; // upward | downward
    WindowStats before;
    WindowStats after;
    std::string data_description;
};

namespace detail {

inline WindowStats window_stats(const std::vector<double>& values, std::size_t lo,
                                std::size_t hi) {
    std::vector<double> w(values.begin() + static_cast<std::ptrdiff_t>(lo),
                          values.begin() + static_cast<std::ptrdiff_t>(hi));
    WindowStats s;
    s.mean = mean(w);
    s.std = sample_stddev(w);
    double slope = ols_fit(w, Trend::ConstTrend).coefficients[1];
    if (std::abs(slope) < std::max(0.01 * s.std, 1e-12))
        s.trend = "flat";
    else
        s.trend = slope > 0 ? "increasing" : "decreasing";
    return s;
}

} // namespace detail

// Statistical summaries over 30-observation windows on each side of the
// break; windows truncate at the series boundaries but never cross the break.
inline BreakContext build_context(const TimeSeries& ts, std::size_t index, double confidence,
                                  const std::string& description) {
    std::size_t n = ts.size();
    if (index >= n)
        throw Error("build_context: break index out of range");
    std::size_t pre_lo = index >= 30 ? index - 30 : 0;
    std::size_t post_hi = std::min(n, index + 30);
    if (index - pre_lo < 3)
        throw Error("build_context: fewer than 3 observations before the break");
    if (post_hi - index < 3)
        throw Error("build_context: fewer than 3 observations after the break");

    BreakContext ctx;
    ctx.break_date = ts.label(index);
    ctx.confidence = confidence;
    ctx.before = detail::window_stats(ts.values, pre_lo, index);
    ctx.after = detail::window_stats(ts.values, index, post_hi);
    ctx.magnitude = ctx.after.mean - ctx.before.mean;
    ctx.direction = ctx.magnitude < 0 ? "downward" : "upward";
    ctx.data_description = description;
    return ctx;
}

inline BreakContext build_context(const TimeSeries& ts, const EnsembleBreak& brk,
                                  const std::string& description) {
    return build_context(ts, brk.index, brk.confidence, description);
}

inline BreakContext build_context(const TimeSeries& ts, const Detection& det,
                                  const std::string& description) {
    return build_context(ts, det.index, det.confidence, description);
}

} // namespace tsbreak
