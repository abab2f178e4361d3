#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tsbreak/error.hpp"
#include "tsbreak/stats.hpp"

namespace tsbreak {

// Detection methods, in canonical catalog order. This order doubles as the
// deterministic tie-break whenever two methods score equally.
enum class Method {
    BaiPerron,
    Cusum,
    ChowTest,
    ZivotAndrews,
    Pelt,
    BinarySegmentation,
    DynamicProgramming,
    Mosum,
    WildBinarySegmentation,
    Prophet,
};

inline constexpr std::size_t kMethodCount = 10;

inline constexpr std::array<Method, kMethodCount> kAllMethods = {
    Method::BaiPerron,          Method::Cusum,
    Method::ChowTest,           Method::ZivotAndrews,
    Method::Pelt,               Method::BinarySegmentation,
    Method::DynamicProgramming, Method::Mosum,
    Method::WildBinarySegmentation, Method::Prophet,
};

inline constexpr std::array<std::string_view, kMethodCount> kMethodIds = {
    "bai_perron",
    "cusum",
    "chow_test",
    "zivot_andrews",
    "pelt",
    "binary_segmentation",
    "dynamic_programming",
    "mosum",
    "wild_binary_segmentation",
    "prophet",
};

// Minimum series length each method will accept.
inline constexpr std::array<std::size_t, kMethodCount> kMethodMinPoints = {
    10, // bai_perron
    15, // cusum
    20, // chow_test
    20, // zivot_andrews
    10, // pelt
    10, // binary_segmentation
    10, // dynamic_programming
    20, // mosum
    30, // wild_binary_segmentation
    30, // prophet
};

inline std::string_view method_id(Method m) {
    return kMethodIds[static_cast<std::size_t>(m)];
}

inline std::size_t method_min_points(Method m) {
    return kMethodMinPoints[static_cast<std::size_t>(m)];
}

inline std::optional<Method> try_parse_method(std::string_view id) {
    for (std::size_t i = 0; i < kMethodCount; ++i)
        if (kMethodIds[i] == id)
            return kAllMethods[i];
    return std::nullopt;
}

inline Method parse_method(std::string_view id) {
    if (auto m = try_parse_method(id))
        return *m;
    throw Error("unknown method id '" + std::string(id) + "'");
}

// One candidate breakpoint: index is the first position of the new regime
// (0-based, in [1, n-1]); confidence lives in [0, 1].
struct Detection {
    std::size_t index = 0;
    double confidence = 0.0;
    Method method = Method::Cusum;
    double statistic = 0.0;
};

// Unit-root regimes a break can be tested against.
enum class ZaModel { Intercept, TrendSlope, Both }; // 'c', 't', 'ct'

inline ZaModel parse_za_model(std::string_view s) {
    if (s == "c") return ZaModel::Intercept;
    if (s == "t") return ZaModel::TrendSlope;
    if (s == "ct") return ZaModel::Both;
    throw Error("unknown break model '" + std::string(s) + "'");
}

// Knobs shared across the detector implementations. Every field has a
// working default; validate() rejects unusable combinations up front.
struct DetectorConfig {
    // hypothesis-test methods
    double significance_level = 0.05; // one of 0.01 / 0.05 / 0.10
    Trend cusum_trend = Trend::Const;
    Trend chow_trend = Trend::ConstTrend;
    int max_breaks = 5;
    double min_segment_frac = 0.15; // trimming + minimum separation fraction

    // segmentation methods
    std::optional<int> n_breaks;         // fixed break count
    std::optional<double> penalty;       // beta override
    std::optional<std::size_t> min_size; // minimum segment length override
    std::optional<std::size_t> window;   // MOSUM bandwidth override
    std::optional<std::size_t> jump;     // candidate stride override
    double mosum_threshold = 3.5;

    // zivot_andrews
    ZaModel za_model = ZaModel::Intercept;
    std::optional<int> za_lags; // fixed lag order; automatic when absent

    // wild_binary_segmentation
    double wbs_width = 0.05;
    std::uint64_t seed = 0;
    std::optional<std::size_t> wbs_intervals;

    // piecewise-linear trend filter
    int n_changepoints = 25;
    double changepoint_range = 0.8;
    double changepoint_prior_scale = 0.02;

    void validate() const {
        if (significance_level != 0.01 && significance_level != 0.05 &&
            significance_level != 0.10)
            throw Error("significance_level must be one of 0.01, 0.05, 0.10");
        if (!(min_segment_frac > 0.0 && min_segment_frac < 0.5))
            throw Error("min_segment_frac must lie in (0, 0.5)");
        if (!(wbs_width > 0.0 && wbs_width < 0.5))
            throw Error("wbs_width must lie in (0, 0.5)");
        if (mosum_threshold <= 0.0)
            throw Error("mosum_threshold must be positive");
        if (n_breaks && *n_breaks < 0)
            throw Error("n_breaks must be non-negative");
        if (penalty && *penalty <= 0.0)
            throw Error("penalty must be positive");
        if (min_size && *min_size < 1)
            throw Error("min_size must be at least 1");
        if (window && *window < 2)
            throw Error("window must be at least 2");
        if (jump && *jump < 1)
            throw Error("jump must be at least 1");
        if (max_breaks < 1)
            throw Error("max_breaks must be at least 1");
        if (za_lags && *za_lags < 0)
            throw Error("za_lags must be non-negative");
        if (wbs_intervals && *wbs_intervals < 1)
            throw Error("wbs_intervals must be at least 1");
        if (n_changepoints < 1)
            throw Error("n_changepoints must be at least 1");
        if (!(changepoint_range > 0.0 && changepoint_range <= 1.0))
            throw Error("changepoint_range must lie in (0, 1]");
        if (changepoint_prior_scale <= 0.0)
            throw Error("changepoint_prior_scale must be positive");
    }
};

namespace detail {

// Clamp-and-sort helper every detector uses before returning.
inline std::vector<Detection> finalize(std::vector<Detection> dets) {
    for (auto& d : dets) {
        if (d.confidence < 0.0) d.confidence = 0.0;
        if (d.confidence > 1.0) d.confidence = 1.0;
    }
    std::sort(dets.begin(), dets.end(),
              [](const Detection& a, const Detection& b) { return a.index < b.index; });
    return dets;
}

inline void require_length(std::size_t n, Method m) {
    if (n < method_min_points(m))
        throw Error(std::string(method_id(m)) + " needs at least " +
                    std::to_string(method_min_points(m)) + " points, got " + std::to_string(n));
}

} // namespace detail

} // namespace tsbreak
