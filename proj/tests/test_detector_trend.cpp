#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "tsbreak/detectors/trend.hpp"
#include "support/synth.hpp"

using namespace tsbreak;
using Catch::Matchers::WithinAbs;

namespace {

// Unpenalized single-kink least squares: best RSS over every kink position.
std::size_t best_single_kink(const std::vector<double>& y, std::size_t lo, std::size_t hi) {
    std::size_t n = y.size();
    Eigen::Map<const Eigen::VectorXd> yv(y.data(), static_cast<Eigen::Index>(n));
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_k = lo;
    for (std::size_t k = lo; k < hi; ++k) {
        Eigen::MatrixXd X(static_cast<Eigen::Index>(n), 3);
        for (std::size_t t = 0; t < n; ++t) {
            X(static_cast<Eigen::Index>(t), 0) = 1.0;
            X(static_cast<Eigen::Index>(t), 1) = static_cast<double>(t);
            X(static_cast<Eigen::Index>(t), 2) =
                t > k ? static_cast<double>(t - k) : 0.0;
        }
        double rss = (yv - X * X.colPivHouseholderQr().solve(yv)).squaredNorm();
        if (rss < best) {
            best = rss;
            best_k = k;
        }
    }
    return best_k;
}

} // namespace

TEST_CASE("trend detector finds a slope change near the oracle kink") {
    TimeSeries ts = synth::slope_change(120, 60, 0.0, 2.0, 0.1, 3);
    auto dets = trend_detect(ts);
    REQUIRE_FALSE(dets.empty());

    // strongest delta should sit near the unpenalized grid-search kink
    const Detection* top = &dets[0];
    for (const auto& d : dets)
        if (std::abs(d.statistic) > std::abs(top->statistic))
            top = &d;
    std::size_t oracle = best_single_kink(ts.values, 10, 110);
    CHECK(std::abs(static_cast<long>(oracle) - 60) <= 2);
    CHECK(std::abs(static_cast<long>(top->index) - static_cast<long>(oracle)) <= 4);
}

TEST_CASE("noise-free line yields no significant deltas") {
    std::vector<double> y;
    for (int t = 0; t < 60; ++t)
        y.push_back(1.0 + 0.7 * t);
    CHECK(trend_detect(make_series(y)).empty());
    CHECK(trend_detect(make_series(std::vector<double>(60, 4.0))).empty());
}

TEST_CASE("candidate grid spans the changepoint range") {
    TimeSeries ts = synth::slope_change(100, 50, 0.0, 1.0, 0.2, 5);
    TrendFit fit = fit_trend(ts);
    REQUIRE_FALSE(fit.candidate_locations.empty());
    CHECK(fit.candidate_locations.size() <= 25);
    CHECK(fit.candidate_locations.front() >= 2);
    CHECK(fit.candidate_locations.back() <= 80); // 0.8 * 100
    for (std::size_t i = 1; i < fit.candidate_locations.size(); ++i)
        CHECK(fit.candidate_locations[i] > fit.candidate_locations[i - 1]);
    CHECK(fit.deltas.size() == fit.candidate_locations.size());
}

TEST_CASE("objective decreases monotonically across sweeps") {
    TimeSeries ts = synth::slope_change(90, 45, 0.5, -1.0, 0.3, 11);
    TrendFit fit = fit_trend(ts);
    REQUIRE(fit.objective_history.size() >= 2);
    for (std::size_t i = 1; i < fit.objective_history.size(); ++i)
        CHECK(fit.objective_history[i] <= fit.objective_history[i - 1] + 1e-9);
}

TEST_CASE("stronger penalties shrink every delta toward zero") {
    TimeSeries ts = synth::slope_change(100, 50, 0.0, 1.5, 0.2, 7);
    DetectorConfig relaxed;
    relaxed.changepoint_prior_scale = 0.05;
    DetectorConfig harsh;
    harsh.changepoint_prior_scale = 1e-7; // enormous L1 weight
    TrendFit loose = fit_trend(ts, relaxed);
    TrendFit tight = fit_trend(ts, harsh);

    double loose_l1 = 0, tight_l1 = 0;
    for (double d : loose.deltas)
        loose_l1 += std::abs(d);
    for (double d : tight.deltas)
        tight_l1 += std::abs(d);
    CHECK(tight_l1 <= loose_l1 + 1e-12);
    for (double d : tight.deltas)
        CHECK_THAT(d, WithinAbs(0.0, 1e-9));
}

TEST_CASE("largest delta reports confidence 0.9 exactly") {
    TimeSeries ts = synth::slope_change(120, 60, 0.0, 2.0, 0.1, 3);
    auto dets = trend_detect(ts);
    REQUIRE_FALSE(dets.empty());
    double max_conf = 0;
    for (const auto& d : dets)
        max_conf = std::max(max_conf, d.confidence);
    CHECK_THAT(max_conf, WithinAbs(0.9, 1e-12));
    for (const auto& d : dets) {
        CHECK(d.confidence > 0.4);
        CHECK(d.confidence <= 0.9);
    }
}

TEST_CASE("every reported delta clears the significance threshold") {
    TimeSeries ts = synth::slope_change(150, 70, 1.0, -0.5, 0.4, 13);
    TrendFit fit = fit_trend(ts);
    auto dets = trend_detect(ts);
    for (const auto& d : dets)
        CHECK(std::abs(d.statistic) > 0.01 * fit.sigma_y);
}

TEST_CASE("trend detector rejects short input") {
    CHECK_THROWS_AS(trend_detect(make_series(std::vector<double>(29, 1.0))), Error);
}
