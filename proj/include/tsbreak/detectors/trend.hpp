#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "tsbreak/detect.hpp"
#include "tsbreak/time_series.hpp"

namespace tsbreak {

// Piecewise-linear trend fit: y(t) ~ b0 + b1*t + sum_j delta_j * relu(t - s_j),
// with an L1 penalty on the deltas.
struct TrendFit {
    double base_intercept = 0.0;
    double base_slope = 0.0;
    std::vector<std::size_t> candidate_locations;
    std::vector<double> deltas;
    double sigma_y = 0.0;
    double lambda = 0.0;
    std::vector<double> objective_history; // one entry per completed sweep
};

inline TrendFit fit_trend(const TimeSeries& ts, const DetectorConfig& cfg = {}) {
    cfg.validate();
    std::size_t n = ts.size();
    detail::require_length(n, Method::Prophet);

    TrendFit fit;
    fit.sigma_y = sample_stddev(ts.values);

    double span = cfg.changepoint_range * static_cast<double>(n);
    for (int i = 1; i <= cfg.n_changepoints; ++i) {
        auto s = static_cast<std::size_t>(
            std::lround(static_cast<double>(i) * span / (cfg.n_changepoints + 1)));
        if (s < 2 || s > n - 2)
            continue;
        if (!fit.candidate_locations.empty() && fit.candidate_locations.back() == s)
            continue;
        fit.candidate_locations.push_back(s);
    }
    std::size_t q = fit.candidate_locations.size();
    fit.deltas.assign(q, 0.0);
    if (fit.sigma_y < 1e-12)
        return fit;

    fit.lambda = fit.sigma_y / (cfg.changepoint_prior_scale * static_cast<double>(n));

    // columns: intercept, slope, relu(t - s_j)
    std::span<const double> y = ts.values;
    std::vector<std::vector<double>> cols(2 + q, std::vector<double>(n));
    for (std::size_t t = 0; t < n; ++t) {
        cols[0][t] = 1.0;
        cols[1][t] = static_cast<double>(t);
        for (std::size_t j = 0; j < q; ++j) {
            double s = static_cast<double>(fit.candidate_locations[j]);
            cols[2 + j][t] = std::max(0.0, static_cast<double>(t) - s);
        }
    }
    std::vector<double> norm2(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        double s = 0;
        for (double v : cols[j])
            s += v * v;
        norm2[j] = s;
    }

    std::vector<double> beta(cols.size(), 0.0);
    std::vector<double> resid(y.begin(), y.end());
    auto objective = [&]() {
        double obj = 0;
        for (double r : resid)
            obj += 0.5 * r * r;
        for (std::size_t j = 0; j < q; ++j)
            obj += fit.lambda * std::abs(beta[2 + j]);
        return obj;
    };

    double prev_obj = objective();
    for (int sweep = 0; sweep < 10000; ++sweep) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (norm2[j] <= 0.0)
                continue;
            double rho = 0;
            for (std::size_t t = 0; t < n; ++t)
                rho += cols[j][t] * (resid[t] + cols[j][t] * beta[j]);
            double b;
            if (j < 2) {
                b = rho / norm2[j];
            } else {
                double shrunk = std::abs(rho) - fit.lambda;
                b = shrunk > 0 ? std::copysign(shrunk, rho) / norm2[j] : 0.0;
            }
            double diff = b - beta[j];
            if (diff != 0.0) {
                for (std::size_t t = 0; t < n; ++t)
                    resid[t] -= diff * cols[j][t];
                beta[j] = b;
            }
        }
        double obj = objective();
        fit.objective_history.push_back(obj);
        if (prev_obj - obj <= 1e-6 * std::max(1.0, prev_obj))
            break;
        prev_obj = obj;
    }

    fit.base_intercept = beta[0];
    fit.base_slope = beta[1];
    for (std::size_t j = 0; j < q; ++j)
        fit.deltas[j] = beta[2 + j];
    return fit;
}

inline std::vector<Detection> trend_detect(const TimeSeries& ts, const DetectorConfig& cfg = {}) {
    TrendFit fit = fit_trend(ts, cfg);
    double max_abs = 0.0;
    for (double d : fit.deltas)
        max_abs = std::max(max_abs, std::abs(d));

    double threshold = 0.01 * fit.sigma_y;
    std::vector<Detection> out;
    for (std::size_t j = 0; j < fit.deltas.size(); ++j) {
        if (std::abs(fit.deltas[j]) <= threshold || max_abs <= 0.0)
            continue;
        Detection d;
        d.index = fit.candidate_locations[j];
        d.method = Method::Prophet;
        d.statistic = fit.deltas[j];
        d.confidence = 0.4 + 0.5 * (std::abs(fit.deltas[j]) / max_abs);
        out.push_back(d);
    }
    return detail::finalize(std::move(out));
}

} // namespace tsbreak
