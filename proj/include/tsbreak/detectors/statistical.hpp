#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/distributions/fisher_f.hpp>

#include "tsbreak/detect.hpp"
#include "tsbreak/detectors/segmentation.hpp"
#include "tsbreak/time_series.hpp"

namespace tsbreak {

namespace detail {

inline double interp_pvalue(const std::vector<std::pair<double, double>>& anchors, double x) {
    // anchors sorted by x ascending; linear between, nearest-segment slope
    // outside, clamped to [0.001, 0.999]
    std::size_t m = anchors.size();
    std::size_t seg = 0;
    if (x >= anchors[m - 1].first)
        seg = m - 2;
    else
        while (seg + 2 < m && x >= anchors[seg + 1].first)
            ++seg;
    auto [x0, p0] = anchors[seg];
    auto [x1, p1] = anchors[seg + 1];
    double p = p0 + (p1 - p0) * (x - x0) / (x1 - x0);
    return std::clamp(p, 0.001, 0.999);
}

// Asymptotic sup-F critical values for a single coefficient under 15%
// trimming: 7.04 (10%), 8.58 (5%), 12.29 (1%).
inline double supf_pvalue(double f) {
    static const std::vector<std::pair<double, double>> anchors{
        {0.0, 0.999}, {7.04, 0.10}, {8.58, 0.05}, {12.29, 0.01}};
    if (f <= 0.0)
        return 0.999;
    return interp_pvalue(anchors, f);
}

inline double cusum_critical(double alpha) {
    if (alpha == 0.01)
        return 1.63;
    if (alpha == 0.05)
        return 1.36;
    if (alpha == 0.10)
        return 1.14;
    throw Error("cusum significance level must be one of 0.01, 0.05, 0.10");
}

struct ZaCriticals {
    double cv1, cv5, cv10;
};

inline const ZaCriticals& za_criticals(ZaModel model) {
    static const ZaCriticals kIntercept{-5.34, -4.80, -4.58};
    static const ZaCriticals kTrend{-4.93, -4.42, -4.11};
    static const ZaCriticals kBoth{-5.57, -5.08, -4.82};
    switch (model) {
    case ZaModel::Intercept: return kIntercept;
    case ZaModel::TrendSlope: return kTrend;
    case ZaModel::Both: return kBoth;
    }
    return kIntercept;
}

inline double za_pvalue(double stat, ZaModel model) {
    const ZaCriticals& cv = za_criticals(model);
    const std::vector<std::pair<double, double>> anchors{
        {cv.cv1, 0.01}, {cv.cv5, 0.05}, {cv.cv10, 0.10}};
    return interp_pvalue(anchors, stat);
}

} // namespace detail

// ----- CUSUM -----------------------------------------------------------------

inline std::vector<Detection> cusum_detect(const TimeSeries& ts, const DetectorConfig& cfg = {}) {
    cfg.validate();
    std::size_t n = ts.size();
    detail::require_length(n, Method::Cusum);

    OlsFit fit = ols_fit(ts.values, cfg.cusum_trend);
    double sigma = std::sqrt(fit.residual_variance);
    if (sigma < 1e-12)
        return {};
    double ebar = mean(fit.residuals);

    double cum = 0.0, best = 0.0;
    std::size_t best_t = 0;
    double scale = sigma * std::sqrt(static_cast<double>(n));
    for (std::size_t t = 0; t + 2 <= n; ++t) {
        cum += fit.residuals[t] - ebar;
        if (t == 0)
            continue; // keep reported index >= 2
        double s = cum / scale;
        if (std::abs(s) > std::abs(best)) {
            best = s;
            best_t = t;
        }
    }

    double crit = detail::cusum_critical(cfg.significance_level);
    if (std::abs(best) <= crit)
        return {};
    Detection d;
    d.index = best_t + 1;
    d.method = Method::Cusum;
    d.statistic = best;
    d.confidence = std::min(0.95, std::max(0.1, std::abs(best) / crit));
    return detail::finalize({d});
}

// ----- Bai-Perron ------------------------------------------------------------

inline std::vector<Detection> bai_perron_detect(const TimeSeries& ts,
                                                const DetectorConfig& cfg = {}) {
    cfg.validate();
    std::size_t n = ts.size();
    detail::require_length(n, Method::BaiPerron);

    std::size_t h = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::ceil(cfg.min_segment_frac * static_cast<double>(n))));
    SegmentCost cost(ts.values);

    double prev_ssr = cost(0, n);
    std::vector<std::size_t> accepted;
    double last_p = 1.0, last_f = 0.0;
    for (int m = 1; m <= cfg.max_breaks; ++m) {
        if ((static_cast<std::size_t>(m) + 1) * h > n)
            break;
        std::vector<std::size_t> breaks = detail::dynp_partition(cost, m, h);
        double ssr = 0.0;
        std::size_t lo = 0;
        for (std::size_t b : breaks) {
            ssr += cost(lo, b);
            lo = b;
        }
        ssr += cost(lo, n);

        double f;
        if (ssr <= 1e-12) {
            if (prev_ssr <= 1e-12)
                break; // already a perfect fit without the extra break
            f = 1e12;
        } else {
            f = (prev_ssr - ssr) / (ssr / static_cast<double>(n - 3));
        }
        double p = detail::supf_pvalue(f);
        if (p >= cfg.significance_level)
            break;
        accepted = breaks;
        last_p = p;
        last_f = f;
        prev_ssr = ssr;
    }

    std::vector<Detection> out;
    for (std::size_t b : accepted) {
        Detection d;
        d.index = b;
        d.method = Method::BaiPerron;
        d.statistic = last_f;
        d.confidence = 1.0 - last_p;
        out.push_back(d);
    }
    return detail::finalize(std::move(out));
}

// ----- Chow test -------------------------------------------------------------

inline std::vector<Detection> chow_detect(const TimeSeries& ts, const DetectorConfig& cfg = {}) {
    cfg.validate();
    std::size_t n = ts.size();
    detail::require_length(n, Method::ChowTest);

    int k = trend_params(cfg.chow_trend);
    if (k < 1)
        throw Error("chow_test: trend must include at least an intercept");
    std::size_t h = std::max<std::size_t>(
        static_cast<std::size_t>(k) + 1,
        static_cast<std::size_t>(std::ceil(cfg.min_segment_frac * static_cast<double>(n))));
    if (2 * h > n)
        throw Error("chow_test: series too short for trimming");

    double rss_full = ols_fit(ts.values, cfg.chow_trend).rss;
    boost::math::fisher_f fdist(k, static_cast<double>(n - 2 * static_cast<std::size_t>(k)));

    std::span<const double> y = ts.values;
    const double nanv = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> pvals, fvals;
    std::vector<std::size_t> taus;
    std::size_t evaluated = 0, skipped_zero_rss = 0;
    for (std::size_t tau = h; tau + h <= n; ++tau) {
        double f = nanv, p = nanv;
        try {
            Eigen::Map<const Eigen::VectorXd> y1(y.data(), static_cast<Eigen::Index>(tau));
            Eigen::Map<const Eigen::VectorXd> y2(y.data() + tau,
                                                 static_cast<Eigen::Index>(n - tau));
            double rss1 = solve_ls(trend_design(tau, cfg.chow_trend), y1).rss;
            double rss2 = solve_ls(trend_design(n - tau, cfg.chow_trend, tau), y2).rss;
            double denom = rss1 + rss2;
            if (denom > 1e-12) {
                f = ((rss_full - rss1 - rss2) / k) /
                    (denom / static_cast<double>(n - 2 * static_cast<std::size_t>(k)));
                f = std::max(f, 0.0);
                p = 1.0 - boost::math::cdf(fdist, f);
                ++evaluated;
            } else {
                ++skipped_zero_rss;
            }
        } catch (const Error&) {
            // rank-deficient split: leave NaN
        }
        taus.push_back(tau);
        fvals.push_back(f);
        pvals.push_back(p);
    }
    if (evaluated == 0 && skipped_zero_rss == 0)
        throw Error("chow_test: every candidate split was rank-deficient");

    // local F-maxima below alpha, most significant first, minimum
    // separation h (ranking on F avoids underflowed p ties)
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < taus.size(); ++i) {
        if (std::isnan(pvals[i]) || pvals[i] >= cfg.significance_level)
            continue;
        bool left_ok = i == 0 || std::isnan(fvals[i - 1]) || fvals[i] >= fvals[i - 1];
        bool right_ok =
            i + 1 == taus.size() || std::isnan(fvals[i + 1]) || fvals[i] >= fvals[i + 1];
        if (left_ok && right_ok)
            order.push_back(i);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return fvals[a] != fvals[b] ? fvals[a] > fvals[b] : taus[a] < taus[b];
    });

    std::vector<Detection> out;
    for (std::size_t i : order) {
        bool clash = false;
        for (const Detection& d : out)
            if ((taus[i] > d.index ? taus[i] - d.index : d.index - taus[i]) < h) {
                clash = true;
                break;
            }
        if (clash)
            continue;
        Detection d;
        d.index = taus[i];
        d.method = Method::ChowTest;
        d.statistic = fvals[i];
        d.confidence = std::max(0.05, std::min(0.95, 1.0 - pvals[i]));
        out.push_back(d);
    }
    return detail::finalize(std::move(out));
}

// ----- Zivot-Andrews ---------------------------------------------------------

namespace detail {

// t-statistic of the level coefficient in the break-augmented regression for
// candidate break tau (first index of the new regime).
inline double za_stat_at(std::span<const double> y, std::size_t tau, ZaModel model, int lags) {
    std::size_t n = y.size();
    std::size_t start = static_cast<std::size_t>(lags) + 1;
    std::size_t rows = n - start;
    bool has_du = model != ZaModel::TrendSlope;
    bool has_dt = model != ZaModel::Intercept;
    int ncol = 2 + (has_du ? 1 : 0) + (has_dt ? 1 : 0) + 1 + lags;

    Eigen::MatrixXd X(static_cast<Eigen::Index>(rows), ncol);
    Eigen::VectorXd dy(static_cast<Eigen::Index>(rows));
    Eigen::Index level_col = 0;
    for (std::size_t r = 0; r < rows; ++r) {
        std::size_t t = start + r;
        Eigen::Index c = 0;
        X(static_cast<Eigen::Index>(r), c++) = 1.0;
        if (has_du)
            X(static_cast<Eigen::Index>(r), c++) = t >= tau ? 1.0 : 0.0;
        X(static_cast<Eigen::Index>(r), c++) = static_cast<double>(t + 1);
        if (has_dt)
            X(static_cast<Eigen::Index>(r), c++) =
                t >= tau ? static_cast<double>(t - tau + 1) : 0.0;
        level_col = c;
        X(static_cast<Eigen::Index>(r), c++) = y[t - 1];
        for (int j = 1; j <= lags; ++j)
            X(static_cast<Eigen::Index>(r), c++) = y[t - j] - y[t - j - 1];
        dy[static_cast<Eigen::Index>(r)] = y[t] - y[t - 1];
    }
    LeastSquares ls = solve_ls(X, dy);
    return ls.tstat(level_col);
}

} // namespace detail

inline std::vector<Detection> zivot_andrews_detect(const TimeSeries& ts,
                                                   const DetectorConfig& cfg = {}) {
    cfg.validate();
    std::size_t n = ts.size();
    detail::require_length(n, Method::ZivotAndrews);

    int lags;
    if (cfg.za_lags) {
        lags = *cfg.za_lags;
    } else {
        lags = adf_test(ts.values, Trend::ConstTrend).lags_used;
    }
    if (static_cast<std::size_t>(lags) + 8 > n)
        throw Error("zivot_andrews: too few observations after lag augmentation");

    std::size_t h = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::ceil(cfg.min_segment_frac * static_cast<double>(n))));

    double best = std::numeric_limits<double>::infinity();
    std::size_t best_tau = 0;
    bool found = false;
    for (std::size_t tau = h; tau + h <= n; ++tau) {
        double stat;
        try {
            stat = detail::za_stat_at(ts.values, tau, cfg.za_model, lags);
        } catch (const Error&) {
            continue;
        }
        if (stat < best) {
            best = stat;
            best_tau = tau;
            found = true;
        }
    }
    if (!found)
        throw Error("zivot_andrews: every candidate regression was degenerate");

    double p = detail::za_pvalue(best, cfg.za_model);
    if (p >= 0.05)
        return {};
    Detection d;
    d.index = best_tau;
    d.method = Method::ZivotAndrews;
    d.statistic = best;
    d.confidence = std::max(0.0, 1.0 - p);
    return detail::finalize({d});
}

} // namespace tsbreak
