#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "tsbreak/error.hpp"

namespace tsbreak {

// Deterministic regressor sets shared by the regression-based detectors.
enum class Trend { None, Const, ConstTrend }; // 'n', 'c', 'ct'

inline int trend_params(Trend t) {
    switch (t) {
    case Trend::None: return 0;
    case Trend::Const: return 1;
    case Trend::ConstTrend: return 2;
    }
    return 0;
}

inline const char* trend_name(Trend t) {
    switch (t) {
    case Trend::None: return "n";
    case Trend::Const: return "c";
    case Trend::ConstTrend: return "ct";
    }
    return "?";
}

inline Trend parse_trend(std::string_view s) {
    if (s == "n") return Trend::None;
    if (s == "c") return Trend::Const;
    if (s == "ct") return Trend::ConstTrend;
    throw Error("unknown trend spec '" + std::string(s) + "'");
}

// ----- descriptive statistics -------------------------------------------

inline double mean(std::span<const double> y) {
    if (y.empty())
        throw Error("mean of empty range");
    double s = 0;
    for (double v : y)
        s += v;
    return s / static_cast<double>(y.size());
}

// Population variance (ddof = 0).
inline double variance(std::span<const double> y) {
    double m = mean(y), s = 0;
    for (double v : y)
        s += (v - m) * (v - m);
    return s / static_cast<double>(y.size());
}

inline double stddev(std::span<const double> y) {
    return std::sqrt(variance(y));
}

// Sample standard deviation (ddof = 1); 0 for a single observation.
inline double sample_stddev(std::span<const double> y) {
    if (y.size() < 2)
        return 0.0;
    double m = mean(y), s = 0;
    for (double v : y)
        s += (v - m) * (v - m);
    return std::sqrt(s / static_cast<double>(y.size() - 1));
}

// Linearly interpolated quantile, q in [0, 1].
inline double quantile(std::vector<double> y, double q) {
    if (y.empty())
        throw Error("quantile of empty range");
    std::sort(y.begin(), y.end());
    double pos = q * static_cast<double>(y.size() - 1);
    std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    std::size_t hi = static_cast<std::size_t>(std::ceil(pos));
    double frac = pos - static_cast<double>(lo);
    return y[lo] + (y[hi] - y[lo]) * frac;
}

inline double pearson_corr(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw Error("pearson_corr needs two equal-length ranges of size >= 2");
    double mx = mean(x), my = mean(y);
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0)
        return 0.0; // degenerate: at least one side is constant
    return sxy / std::sqrt(sxx * syy);
}

// Standard normal CDF.
inline double norm_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

// ----- least squares ------------------------------------------------------

struct OlsFit {
    std::vector<double> coefficients;
    std::vector<double> residuals;
    double rss = 0.0;
    double residual_variance = 0.0; // rss / (n - k)
    int k = 0;                      // number of regression parameters
};

// General least-squares solve with rank checking; standard errors follow
// from the pseudo-inverse so the t-statistics in the ADF-style regressions
// are stable even for poorly scaled designs.
struct LeastSquares {
    Eigen::VectorXd coef;
    Eigen::VectorXd residuals;
    double rss = 0.0;
    double sigma2 = 0.0; // rss / (n - k)
    Eigen::MatrixXd pinv;

    double se(Eigen::Index j) const {
        double v = pinv.row(j).squaredNorm() * sigma2;
        return std::sqrt(std::max(v, 0.0));
    }
    double tstat(Eigen::Index j) const {
        double s = se(j);
        if (s == 0.0)
            throw Error("zero standard error in regression");
        return coef[j] / s;
    }
};

inline LeastSquares solve_ls(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    if (X.rows() != y.size())
        throw Error("design/response size mismatch");
    if (X.rows() <= X.cols())
        throw Error("least squares needs more observations than parameters");
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(X);
    if (cod.rank() < X.cols())
        throw Error("rank-deficient regression design");
    LeastSquares out;
    out.coef = cod.solve(y);
    out.residuals = y - X * out.coef;
    out.rss = out.residuals.squaredNorm();
    out.sigma2 = out.rss / static_cast<double>(X.rows() - X.cols());
    out.pinv = cod.pseudoInverse();
    return out;
}

inline Eigen::MatrixXd trend_design(std::size_t n, Trend trend, std::size_t t0 = 0) {
    int k = trend_params(trend);
    Eigen::MatrixXd X(static_cast<Eigen::Index>(n), k);
    for (std::size_t i = 0; i < n; ++i) {
        if (k >= 1)
            X(static_cast<Eigen::Index>(i), 0) = 1.0;
        if (k >= 2)
            X(static_cast<Eigen::Index>(i), 1) = static_cast<double>(t0 + i + 1);
    }
    return X;
}

// OLS of y on the deterministic trend regressors. trend='n' has an empty
// design: residuals are y itself and rss = sum(y^2).
inline OlsFit ols_fit(std::span<const double> y, Trend trend) {
    std::size_t n = y.size();
    int k = trend_params(trend);
    if (n < static_cast<std::size_t>(k) + 1)
        throw Error("ols_fit: series too short for trend spec");
    OlsFit fit;
    fit.k = k;
    fit.residuals.assign(y.begin(), y.end());
    if (k == 0) {
        for (double v : y)
            fit.rss += v * v;
        fit.residual_variance = n > 0 ? fit.rss / static_cast<double>(n) : 0.0;
        return fit;
    }
    Eigen::Map<const Eigen::VectorXd> yv(y.data(), static_cast<Eigen::Index>(n));
    Eigen::MatrixXd X = trend_design(n, trend);
    LeastSquares ls = solve_ls(X, yv);
    fit.coefficients.assign(ls.coef.data(), ls.coef.data() + ls.coef.size());
    for (std::size_t i = 0; i < n; ++i)
        fit.residuals[i] = ls.residuals[static_cast<Eigen::Index>(i)];
    fit.rss = ls.rss;
    fit.residual_variance = ls.sigma2;
    return fit;
}

// ----- autocorrelation ----------------------------------------------------

// Sample autocorrelation at the given lag; mean-centered products normalized
// by the lag-0 variance. A constant series is defined as 0.
inline double acf(std::span<const double> y, std::size_t lag) {
    std::size_t n = y.size();
    if (lag == 0)
        return 1.0;
    if (lag >= n)
        throw Error("acf: lag must be smaller than the series length");
    double m = mean(y);
    double denom = 0;
    for (double v : y)
        denom += (v - m) * (v - m);
    if (denom == 0.0)
        return 0.0;
    double num = 0;
    for (std::size_t t = lag; t < n; ++t)
        num += (y[t] - m) * (y[t - lag] - m);
    return num / denom;
}

// ----- augmented Dickey-Fuller test ---------------------------------------

struct UnitRootResult {
    double statistic = 0.0; // t-value of the level coefficient
    double p_value = 1.0;
    int lags_used = 0;
};

namespace detail {

// MacKinnon (1994) response-surface coefficients for the ADF tau
// distribution, single series (k = 1), as tabulated for the 'c' and 'ct'
// regressions. p = Phi(c0 + c1*tau + c2*tau^2 [+ c3*tau^3]) with the small-p
// polynomial used below tau_star and the large-p polynomial above it.
struct MackinnonTable {
    double tau_min, tau_max, tau_star;
    double small_p[3];
    double large_p[4];
};

inline const MackinnonTable& mackinnon_table(Trend trend) {
    static const MackinnonTable kC{-18.83, 2.74, -1.61,
                                   {2.1659, 1.4412, 0.038269},
                                   {1.7339, 0.93202, -0.12745, -0.010368}};
    static const MackinnonTable kCt{-16.18, 0.7, -2.89,
                                    {3.2512, 1.6047, 0.049588},
                                    {2.5261, 0.61654, -0.37956, -0.060285}};
    if (trend == Trend::ConstTrend)
        return kCt;
    return kC;
}

inline double mackinnon_pvalue(double stat, Trend trend) {
    const MackinnonTable& t = mackinnon_table(trend);
    if (stat > t.tau_max)
        return 1.0;
    if (stat < t.tau_min)
        return 0.0;
    double z;
    if (stat <= t.tau_star) {
        z = t.small_p[0] + t.small_p[1] * stat + t.small_p[2] * stat * stat;
    } else {
        z = t.large_p[0] + t.large_p[1] * stat + t.large_p[2] * stat * stat +
            t.large_p[3] * stat * stat * stat;
    }
    return norm_cdf(z);
}

// Design matrix for the ADF regression at lag order p:
//   dy_t ~ deterministics + y_{t-1} + dy_{t-1} ... dy_{t-p}
// built over observations t = start .. n-1 of the original series.
inline void adf_design(std::span<const double> y, Trend trend, int p, std::size_t start,
                       Eigen::MatrixXd& X, Eigen::VectorXd& dy, Eigen::Index& level_col) {
    std::size_t n = y.size();
    if (start < static_cast<std::size_t>(p) + 1 || start >= n)
        throw Error("adf: not enough observations after lagging");
    std::size_t rows = n - start;
    int det = trend_params(trend);
    X.resize(static_cast<Eigen::Index>(rows), det + 1 + p);
    dy.resize(static_cast<Eigen::Index>(rows));
    for (std::size_t r = 0; r < rows; ++r) {
        std::size_t t = start + r;
        Eigen::Index c = 0;
        if (det >= 1)
            X(static_cast<Eigen::Index>(r), c++) = 1.0;
        if (det >= 2)
            X(static_cast<Eigen::Index>(r), c++) = static_cast<double>(t + 1);
        level_col = c;
        X(static_cast<Eigen::Index>(r), c++) = y[t - 1];
        for (int j = 1; j <= p; ++j)
            X(static_cast<Eigen::Index>(r), c++) = y[t - j] - y[t - j - 1];
        dy[static_cast<Eigen::Index>(r)] = y[t] - y[t - 1];
    }
}

} // namespace detail

// ADF unit-root test with AIC lag selection up to max_lags (Schwert's rule
// floor(12*(n/100)^0.25) by default). Lag orders are compared on the common
// sample implied by max_lags, then the chosen order is refit on the full
// usable sample. P-values use the MacKinnon (1994) response surface.
inline UnitRootResult adf_test(std::span<const double> y, Trend trend = Trend::Const,
                               std::optional<int> max_lags = std::nullopt) {
    std::size_t n = y.size();
    if (n < 10)
        throw Error("adf_test: need at least 10 observations");
    if (trend == Trend::None)
        throw Error("adf_test: trend must be 'c' or 'ct'");
    int det = trend_params(trend);
    int maxlag = max_lags.value_or(
        static_cast<int>(std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25))));
    // Keep enough rows to estimate the richest candidate model.
    int hard_cap = static_cast<int>(n) / 2 - det - 2;
    maxlag = std::clamp(maxlag, 0, std::max(0, hard_cap));

    Eigen::MatrixXd X;
    Eigen::VectorXd dy;
    Eigen::Index level_col = 0;

    int best_p = 0;
    double best_aic = std::numeric_limits<double>::infinity();
    std::size_t common_start = static_cast<std::size_t>(maxlag) + 1;
    for (int p = 0; p <= maxlag; ++p) {
        detail::adf_design(y, trend, p, common_start, X, dy, level_col);
        LeastSquares ls;
        try {
            ls = solve_ls(X, dy);
        } catch (const Error&) {
            if (p == 0)
                throw; // degenerate base regression: report it
            continue;
        }
        double nobs = static_cast<double>(dy.size());
        double sigma2 = ls.rss / nobs;
        if (sigma2 <= 0)
            throw Error("adf_test: zero-variance regression residual");
        double aic = nobs * std::log(sigma2) + 2.0 * static_cast<double>(X.cols());
        if (aic < best_aic) {
            best_aic = aic;
            best_p = p;
        }
    }

    detail::adf_design(y, trend, best_p, static_cast<std::size_t>(best_p) + 1, X, dy, level_col);
    LeastSquares ls = solve_ls(X, dy);
    UnitRootResult out;
    out.lags_used = best_p;
    out.statistic = ls.tstat(level_col);
    out.p_value = detail::mackinnon_pvalue(out.statistic, trend);
    return out;
}

} // namespace tsbreak
