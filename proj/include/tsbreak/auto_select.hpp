#pragma once

#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "tsbreak/detect.hpp"
#include "tsbreak/stats.hpp"
#include "tsbreak/time_series.hpp"

namespace tsbreak {

// The six data characteristics driving method selection.
struct DataProfile {
    std::size_t n = 0;
    double nu = 0.0;     // coefficient of variation, sigma / (|mu| + 1e-8)
    double rho = 0.0;    // |pearson(values, 1..n)|
    double s = 1.0;      // ADF p-value
    double o = 0.0;      // IQR outlier fraction of linear-detrend residuals
    double lambda = 0.0; // max |acf| over seasonal candidate lags
};

inline DataProfile profile_data(const TimeSeries& ts) {
    std::size_t n = ts.size();
    if (n < 10)
        throw Error("profile_data: need at least 10 observations");

    DataProfile p;
    p.n = n;
    double mu = mean(ts.values);
    double sigma = stddev(ts.values);
    p.nu = sigma / (std::abs(mu) + 1e-8);
    if (sigma < 1e-12) {
        p.rho = 0.0;
        p.s = 0.0;
        p.o = 0.0;
        p.lambda = 0.0;
        return p;
    }

    std::vector<double> idx(n);
    std::iota(idx.begin(), idx.end(), 1.0);
    p.rho = std::abs(pearson_corr(ts.values, idx));

    p.s = adf_test(ts.values, Trend::Const).p_value;

    OlsFit detrend = ols_fit(ts.values, Trend::ConstTrend);
    double q1 = quantile(detrend.residuals, 0.25);
    double q3 = quantile(detrend.residuals, 0.75);
    double iqr = q3 - q1;
    double lo = q1 - 1.5 * iqr, hi = q3 + 1.5 * iqr;
    std::size_t outliers = 0;
    for (double r : detrend.residuals)
        if (r < lo || r > hi)
            ++outliers;
    p.o = static_cast<double>(outliers) / static_cast<double>(n);

    for (std::size_t k : {7u, 12u, 24u, 30u, 365u})
        if (k < n)
            p.lambda = std::max(p.lambda, std::abs(acf(ts.values, k)));
    return p;
}

inline std::vector<Method> filter_methods(const DataProfile& profile) {
    std::vector<Method> out;
    for (Method m : kAllMethods)
        if (profile.n >= method_min_points(m))
            out.push_back(m);
    if (out.empty())
        throw Error("filter_methods: series shorter than every method minimum");
    return out;
}

namespace detail {

inline double score_f1(Method m, std::size_t n) {
    if (n < 50) {
        switch (m) {
        case Method::BaiPerron: return 0.3;
        case Method::Cusum: return n >= 20 ? 0.9 : 0.2;
        case Method::ChowTest: return n >= 40 ? 0.8 : 0.4;
        case Method::ZivotAndrews: return n >= 30 ? 0.8 : 0.3;
        case Method::Pelt: return 0.6;
        case Method::BinarySegmentation: return n >= 30 ? 0.8 : 0.5;
        case Method::DynamicProgramming: return 0.4;
        case Method::Mosum: return n >= 40 ? 0.8 : 0.3;
        case Method::WildBinarySegmentation: return 0.4;
        case Method::Prophet: return n >= 50 ? 0.4 : 0.1;
        }
    } else if (n < 1000) {
        switch (m) {
        case Method::BaiPerron: return 0.9;
        case Method::Cusum: return 0.9;
        case Method::ChowTest: return 0.8;
        case Method::ZivotAndrews: return 0.8;
        case Method::Pelt: return 0.9;
        case Method::BinarySegmentation: return 0.8;
        case Method::DynamicProgramming: return 0.7;
        case Method::Mosum: return 0.8;
        case Method::WildBinarySegmentation: return n >= 100 ? 0.8 : 0.4;
        case Method::Prophet: return n >= 100 ? 0.9 : 0.4;
        }
    } else {
        switch (m) {
        case Method::BaiPerron: return 0.6;
        case Method::Cusum: return 0.9;
        case Method::ChowTest: return 0.8;
        case Method::ZivotAndrews: return 0.8;
        case Method::Pelt: return 0.9;
        case Method::BinarySegmentation: return 0.8;
        case Method::DynamicProgramming: return 0.7;
        case Method::Mosum: return 0.8;
        case Method::WildBinarySegmentation: return 0.8;
        case Method::Prophet: return 0.9;
        }
    }
    return 0.0;
}

// Row order matches the Method enum; columns are the printed bands.
inline constexpr std::array<std::array<double, 3>, kMethodCount> kNoise = {{
    {0.9, 0.6, 0.3}, // bai_perron
    {0.7, 0.8, 0.6}, // cusum
    {0.8, 0.7, 0.4}, // chow_test
    {0.8, 0.6, 0.4}, // zivot_andrews
    {0.8, 0.9, 0.7}, // pelt
    {0.7, 0.8, 0.7}, // binary_segmentation
    {0.8, 0.8, 0.6}, // dynamic_programming
    {0.6, 0.7, 0.6}, // mosum
    {0.5, 0.8, 0.9}, // wild_binary_segmentation
    {0.6, 0.8, 0.8}, // prophet
}};

inline constexpr std::array<std::array<double, 3>, kMethodCount> kTrend = {{
    {0.7, 0.7, 0.5},
    {0.7, 0.8, 0.6},
    {0.7, 0.8, 0.6},
    {0.7, 0.6, 0.4},
    {0.7, 0.7, 0.5},
    {0.7, 0.7, 0.5},
    {0.7, 0.7, 0.5},
    {0.7, 0.7, 0.6},
    {0.7, 0.6, 0.4},
    {0.7, 0.9, 1.0},
}};

inline constexpr std::array<std::array<double, 2>, kMethodCount> kSeasonality = {{
    {0.7, 0.4},
    {0.7, 0.5},
    {0.7, 0.5},
    {0.7, 0.3},
    {0.7, 0.6},
    {0.7, 0.6},
    {0.7, 0.6},
    {0.7, 0.5},
    {0.7, 0.5},
    {0.7, 0.9},
}};

inline constexpr std::array<std::array<double, 3>, kMethodCount> kEfficiency = {{
    {0.7, 0.6, 0.4},
    {0.7, 0.9, 0.8},
    {0.7, 0.7, 0.5},
    {0.7, 0.8, 0.6},
    {0.7, 0.9, 1.0},
    {0.7, 0.8, 0.9},
    {0.7, 0.6, 0.4},
    {0.7, 0.7, 0.6},
    {0.7, 0.5, 0.3},
    {0.7, 0.7, 0.6},
}};

inline constexpr std::array<std::array<double, 2>, kMethodCount> kStationarity = {{
    {0.9, 0.3},
    {0.8, 0.5},
    {0.8, 0.4},
    {0.6, 1.0},
    {0.8, 0.6},
    {0.8, 0.6},
    {0.8, 0.6},
    {0.8, 0.5},
    {0.7, 0.5},
    {0.7, 0.8},
}};

inline constexpr std::array<std::array<double, 2>, kMethodCount> kOutliers = {{
    {0.7, 0.3},
    {0.7, 0.6},
    {0.7, 0.4},
    {0.7, 0.4},
    {0.7, 0.7},
    {0.7, 0.7},
    {0.7, 0.7},
    {0.7, 0.6},
    {0.7, 0.9},
    {0.7, 0.8},
}};

} // namespace detail

struct MethodScore {
    Method method = Method::BaiPerron;
    std::array<double, 7> f{};
    double total = 0.0;
};

inline MethodScore score_method(const DataProfile& p, Method m) {
    auto row = static_cast<std::size_t>(m);
    MethodScore s;
    s.method = m;
    s.f[0] = detail::score_f1(m, p.n);
    s.f[1] = detail::kNoise[row][p.nu < 0.2 ? 0 : (p.nu < 0.5 ? 1 : 2)];
    s.f[2] = detail::kTrend[row][p.rho < 0.2 ? 0 : (p.rho < 0.6 ? 1 : 2)];
    s.f[3] = detail::kSeasonality[row][p.lambda < 0.5 ? 0 : 1];
    s.f[4] = detail::kEfficiency[row][p.n < 100 ? 0 : (p.n < 1000 ? 1 : 2)];
    s.f[5] = detail::kStationarity[row][p.s <= 0.05 ? 0 : 1];
    s.f[6] = detail::kOutliers[row][p.o < 0.05 ? 0 : 1];
    for (double v : s.f)
        s.total += v;
    return s;
}

inline std::vector<MethodScore> score_methods(const DataProfile& p,
                                              const std::vector<Method>& candidates) {
    if (candidates.empty())
        throw Error("score_methods: no candidate methods");
    std::vector<MethodScore> out;
    out.reserve(candidates.size());
    for (Method m : candidates)
        out.push_back(score_method(p, m));
    return out;
}

struct Selection {
    Method method = Method::BaiPerron;
    DataProfile profile;
    std::vector<MethodScore> scores;
};

// Argmax over the scored candidates; ties go to the earlier catalog row.
inline Selection select_method(const TimeSeries& ts) {
    Selection sel;
    sel.profile = profile_data(ts);
    sel.scores = score_methods(sel.profile, filter_methods(sel.profile));
    const MethodScore* best = &sel.scores.front();
    for (const MethodScore& s : sel.scores)
        if (s.total > best->total)
            best = &s;
    sel.method = best->method;
    return sel;
}

} // namespace tsbreak
