#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tsbreak/detect.hpp"
#include "tsbreak/detectors/run.hpp"
#include "tsbreak/time_series.hpp"

namespace tsbreak {

struct DetectionCluster {
    std::vector<Detection> members;
    std::size_t votes = 0; // unique contributing methods
    std::size_t span_min = 0;
    std::size_t span_max = 0;
};

struct EnsembleConfig {
    std::size_t v_min = 5;
    std::optional<double> epsilon_override;
    DetectorConfig detector;
    std::map<Method, DetectorConfig> overrides;
    std::optional<std::vector<Method>> methods;

    void validate() const {
        if (v_min < 1)
            throw Error("ensemble: v_min must be at least 1");
        if (epsilon_override && !(*epsilon_override > 0))
            throw Error("ensemble: epsilon override must be positive");
        if (methods && methods->empty())
            throw Error("ensemble: method subset must not be empty");
        detector.validate();
        for (const auto& [m, cfg] : overrides) {
            (void)m;
            cfg.validate();
        }
    }
};

struct EnsembleBreak {
    double location = 0.0; // confidence-weighted estimate
    std::size_t index = 0; // location rounded to nearest observation
    double confidence = 0.0;
    std::size_t votes = 0;
    std::vector<Method> methods;
    double magnitude = 0.0;
    int direction = 0;
};

struct EnsembleFailure {
    Method method = Method::BaiPerron;
    std::string message;
};

struct EnsembleResult {
    std::vector<EnsembleBreak> breaks;
    std::vector<Detection> pool;
    std::vector<EnsembleFailure> failures;
};

inline double adaptive_epsilon(std::size_t n) {
    return std::min(5.0, std::max(2.0, static_cast<double>(n) / 40.0));
}

inline std::vector<DetectionCluster> cluster_detections(std::vector<Detection> detections,
                                                        double epsilon) {
    std::sort(detections.begin(), detections.end(), [](const Detection& a, const Detection& b) {
        if (a.index != b.index)
            return a.index < b.index;
        if (a.method != b.method)
            return a.method < b.method;
        return a.confidence < b.confidence;
    });

    std::vector<DetectionCluster> clusters;
    for (const Detection& d : detections) {
        bool chain = !clusters.empty() &&
                     static_cast<double>(d.index - clusters.back().span_max) <= epsilon;
        if (!chain) {
            clusters.emplace_back();
            clusters.back().span_min = d.index;
        }
        clusters.back().members.push_back(d);
        clusters.back().span_max = d.index;
    }

    for (DetectionCluster& c : clusters) {
        std::vector<Method> seen;
        for (const Detection& d : c.members)
            if (std::find(seen.begin(), seen.end(), d.method) == seen.end())
                seen.push_back(d.method);
        c.votes = seen.size();
    }
    return clusters;
}

namespace detail {

inline double window_mean(const std::vector<double>& values, std::size_t lo, std::size_t hi) {
    if (lo >= hi)
        return 0.0;
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i)
        s += values[i];
    return s / static_cast<double>(hi - lo);
}

} // namespace detail

inline EnsembleBreak aggregate_cluster(const DetectionCluster& cluster,
                                       const std::vector<double>& values) {
    if (cluster.members.empty())
        throw Error("ensemble: cannot aggregate an empty cluster");

    EnsembleBreak b;
    double conf_sum = 0.0, weighted = 0.0, plain = 0.0;
    for (const Detection& d : cluster.members) {
        conf_sum += d.confidence;
        weighted += d.confidence * static_cast<double>(d.index);
        plain += static_cast<double>(d.index);
        b.confidence += d.confidence;
    }
    std::size_t m = cluster.members.size();
    b.location = conf_sum > 0.0 ? weighted / conf_sum : plain / static_cast<double>(m);
    b.confidence /= static_cast<double>(m);
    b.index = static_cast<std::size_t>(std::llround(b.location));
    b.votes = cluster.votes;

    for (Method method : kAllMethods)
        for (const Detection& d : cluster.members)
            if (d.method == method) {
                b.methods.push_back(method);
                break;
            }

    std::size_t n = values.size();
    if (n > 0 && b.index <= n) {
        std::size_t pre_lo = b.index >= 30 ? b.index - 30 : 0;
        std::size_t post_hi = std::min(n, b.index + 30);
        double pre = detail::window_mean(values, pre_lo, b.index);
        double post = detail::window_mean(values, b.index, post_hi);
        b.magnitude = post - pre;
        b.direction = b.magnitude > 0 ? 1 : (b.magnitude < 0 ? -1 : 0);
    }
    return b;
}

inline EnsembleResult ensemble_detect(const TimeSeries& ts, const EnsembleConfig& cfg = {}) {
    cfg.validate();
    std::vector<Method> enabled =
        cfg.methods ? *cfg.methods : std::vector<Method>(kAllMethods.begin(), kAllMethods.end());

    EnsembleResult result;
    std::size_t ran = 0;
    for (Method m : enabled) {
        if (ts.size() < method_min_points(m)) {
            result.failures.push_back(
                {m, "series too short (needs " + std::to_string(method_min_points(m)) +
                        " observations)"});
            continue;
        }
        DetectorConfig dc = cfg.detector;
        if (auto it = cfg.overrides.find(m); it != cfg.overrides.end())
            dc = it->second;
        try {
            std::vector<Detection> dets = run_method(ts, m, dc);
            result.pool.insert(result.pool.end(), dets.begin(), dets.end());
            ++ran;
        } catch (const std::exception& e) {
            result.failures.push_back({m, e.what()});
        }
    }
    if (ran == 0)
        throw Error("ensemble: no enabled method runnable on this series");

    double epsilon = cfg.epsilon_override ? *cfg.epsilon_override : adaptive_epsilon(ts.size());
    for (const DetectionCluster& c : cluster_detections(result.pool, epsilon))
        if (c.votes >= cfg.v_min)
            result.breaks.push_back(aggregate_cluster(c, ts.values));

    std::sort(result.breaks.begin(), result.breaks.end(),
              [](const EnsembleBreak& a, const EnsembleBreak& b) { return a.location < b.location; });
    return result;
}

} // namespace tsbreak
