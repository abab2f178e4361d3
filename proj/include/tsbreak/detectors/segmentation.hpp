#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <limits>
#include <random>
#include <vector>

#include "tsbreak/detect.hpp"
#include "tsbreak/time_series.hpp"

namespace tsbreak {

enum class CostModel { L2, L1, Normal };

inline CostModel parse_cost_model(std::string_view s) {
    if (s == "l2") return CostModel::L2;
    if (s == "l1") return CostModel::L1;
    if (s == "normal") return CostModel::Normal;
    throw Error("unknown cost model '" + std::string(s) + "'");
}

// Segment cost c(y[lo:hi)) over half-open index ranges. l2 and normal run in
// O(1) off prefix sums; l1 recomputes the median per call.
class SegmentCost {
public:
    SegmentCost(std::vector<double> y, CostModel model = CostModel::L2)
        : y_(std::move(y)), model_(model) {
        ps_.resize(y_.size() + 1, 0.0);
        ps2_.resize(y_.size() + 1, 0.0);
        for (std::size_t i = 0; i < y_.size(); ++i) {
            ps_[i + 1] = ps_[i] + y_[i];
            ps2_[i + 1] = ps2_[i] + y_[i] * y_[i];
        }
    }

    std::size_t size() const { return y_.size(); }
    CostModel model() const { return model_; }

    double operator()(std::size_t lo, std::size_t hi) const {
        if (lo >= hi || hi > y_.size())
            throw Error("segment cost over empty or out-of-range interval");
        switch (model_) {
        case CostModel::L2:
            return l2(lo, hi);
        case CostModel::L1: {
            std::vector<double> seg(y_.begin() + static_cast<std::ptrdiff_t>(lo),
                                    y_.begin() + static_cast<std::ptrdiff_t>(hi));
            std::nth_element(seg.begin(), seg.begin() + static_cast<std::ptrdiff_t>(seg.size() / 2),
                             seg.end());
            double med = seg[seg.size() / 2];
            double c = 0;
            for (double v : seg)
                c += std::abs(v - med);
            return c;
        }
        case CostModel::Normal: {
            double len = static_cast<double>(hi - lo);
            double var = l2(lo, hi) / len;
            return len * std::log(var + 1e-8);
        }
        }
        return 0.0;
    }

private:
    double l2(std::size_t lo, std::size_t hi) const {
        double len = static_cast<double>(hi - lo);
        double s = ps_[hi] - ps_[lo];
        double s2 = ps2_[hi] - ps2_[lo];
        return std::max(0.0, s2 - s * s / len);
    }

    std::vector<double> y_;
    std::vector<double> ps_, ps2_;
    CostModel model_;
};

// Either a penalty value beta or a fixed break count; never both.
struct PenaltySpec {
    std::optional<double> beta;
    std::optional<int> n_bkps;

    static PenaltySpec with_beta(double b) {
        PenaltySpec p;
        p.beta = b;
        return p;
    }
    static PenaltySpec with_breaks(int m) {
        PenaltySpec p;
        p.n_bkps = m;
        return p;
    }

    void validate() const {
        if (beta.has_value() == n_bkps.has_value())
            throw Error("penalty spec needs exactly one of beta / n_bkps");
        if (beta && *beta < 0.0)
            throw Error("penalty beta must be non-negative");
        if (n_bkps && *n_bkps < 0)
            throw Error("n_bkps must be non-negative");
    }
};

namespace detail {

constexpr double kInf = std::numeric_limits<double>::infinity();

// PELT: exact penalized segmentation with pruning. Candidate break
// positions are multiples of `jump`; ties resolve to the earliest index.
inline std::vector<std::size_t> pelt_partition(const SegmentCost& cost, double beta,
                                               std::size_t min_size, std::size_t jump) {
    std::size_t n = cost.size();
    std::vector<std::size_t> cands;
    for (std::size_t t = min_size; t + min_size <= n; ++t)
        if (t % jump == 0)
            cands.push_back(t);
    cands.push_back(n);

    std::vector<double> F(n + 1, kInf);
    std::vector<std::size_t> prev(n + 1, 0);
    F[0] = -beta;
    std::vector<std::size_t> live{0};
    for (std::size_t t : cands) {
        double best = kInf;
        std::size_t arg = 0;
        for (std::size_t s : live) {
            if (t < s + min_size)
                continue;
            double v = F[s] + cost(s, t) + beta;
            if (v < best) {
                best = v;
                arg = s;
            }
        }
        if (best == kInf)
            continue;
        F[t] = best;
        prev[t] = arg;
        std::vector<std::size_t> kept;
        kept.reserve(live.size() + 1);
        for (std::size_t s : live) {
            if (t < s + min_size || F[s] + cost(s, t) <= F[t])
                kept.push_back(s);
        }
        kept.push_back(t);
        live = std::move(kept);
    }
    if (F[n] == kInf)
        throw Error("pelt: no admissible segmentation");

    std::vector<std::size_t> breaks;
    for (std::size_t t = n; t != 0; t = prev[t])
        if (prev[t] != 0)
            breaks.push_back(prev[t]);
    std::sort(breaks.begin(), breaks.end());
    return breaks;
}

// Exact m-break segmentation by dynamic programming over prefixes.
inline std::vector<std::size_t> dynp_partition(const SegmentCost& cost, int m,
                                               std::size_t min_size) {
    std::size_t n = cost.size();
    std::size_t segs = static_cast<std::size_t>(m) + 1;
    if (segs * min_size > n)
        throw Error("dynamic_programming: break count infeasible for min_size");

    std::vector<std::vector<double>> C(segs + 1, std::vector<double>(n + 1, kInf));
    std::vector<std::vector<std::size_t>> arg(segs + 1, std::vector<std::size_t>(n + 1, 0));
    C[0][0] = 0.0;
    for (std::size_t k = 1; k <= segs; ++k) {
        for (std::size_t t = k * min_size; t + (segs - k) * min_size <= n; ++t) {
            double best = kInf;
            std::size_t bs = 0;
            for (std::size_t s = (k - 1) * min_size; s + min_size <= t; ++s) {
                if (C[k - 1][s] == kInf)
                    continue;
                double v = C[k - 1][s] + cost(s, t);
                if (v < best) {
                    best = v;
                    bs = s;
                }
            }
            C[k][t] = best;
            arg[k][t] = bs;
        }
    }
    if (C[segs][n] == kInf)
        throw Error("dynamic_programming: no admissible segmentation");

    std::vector<std::size_t> breaks;
    std::size_t t = n;
    for (std::size_t k = segs; k > 1; --k) {
        t = arg[k][t];
        breaks.push_back(t);
    }
    std::sort(breaks.begin(), breaks.end());
    return breaks;
}

inline double segment_mean(std::span<const double> y, std::size_t lo, std::size_t hi) {
    double s = 0;
    for (std::size_t i = lo; i < hi; ++i)
        s += y[i];
    return s / static_cast<double>(hi - lo);
}

// 1 - exp(-z) with z the mean shift over a 5-point window each side,
// scaled by the pooled within-side spread.
inline double local_shift_confidence(std::span<const double> y, std::size_t b) {
    std::size_t n = y.size();
    std::size_t lo = b >= 5 ? b - 5 : 0;
    std::size_t hi = std::min(n, b + 5);
    double ml = segment_mean(y, lo, b);
    double mr = segment_mean(y, b, hi);
    double sse = 0;
    for (std::size_t i = lo; i < b; ++i)
        sse += (y[i] - ml) * (y[i] - ml);
    for (std::size_t i = b; i < hi; ++i)
        sse += (y[i] - mr) * (y[i] - mr);
    std::size_t dof = (hi - lo) >= 2 ? hi - lo - 2 : 1;
    double sd = std::sqrt(sse / static_cast<double>(dof));
    if (sd < 1e-12)
        return std::abs(mr - ml) > 0.0 ? 1.0 : 0.0;
    double z = std::abs(mr - ml) / sd;
    return 1.0 - std::exp(-z);
}

// Variance-reduction confidence on a +/- 2*min_size window around the break.
inline double variance_reduction_confidence(std::span<const double> y, std::size_t b,
                                            std::size_t min_size) {
    std::size_t n = y.size();
    std::size_t half = 2 * min_size;
    std::size_t lo = b >= half ? b - half : 0;
    std::size_t hi = std::min(n, b + half);
    std::vector<double> win(y.begin() + static_cast<std::ptrdiff_t>(lo),
                            y.begin() + static_cast<std::ptrdiff_t>(hi));
    double total = variance(win);
    if (total < 1e-15)
        return 0.1;
    std::size_t cut = b - lo;
    double nl = static_cast<double>(cut), nr = static_cast<double>(win.size() - cut);
    double vl = nl > 0 ? variance(std::span<const double>(win.data(), cut)) : 0.0;
    double vr = nr > 0 ? variance(std::span<const double>(win.data() + cut, win.size() - cut)) : 0.0;
    double segmented = (vl * nl + vr * nr) / static_cast<double>(win.size());
    double c = 2.0 * (total - segmented) / total;
    return std::min(0.95, std::max(0.1, c));
}

// Local cost-reduction ratio on the same window, for the DP confidence.
inline double local_improvement(const SegmentCost& cost, std::size_t b, std::size_t min_size) {
    std::size_t n = cost.size();
    std::size_t half = 2 * min_size;
    std::size_t lo = b >= half ? b - half : 0;
    std::size_t hi = std::min(n, b + half);
    double whole = cost(lo, hi);
    if (whole <= 1e-15)
        return 0.0;
    double split = cost(lo, b) + cost(b, hi);
    return (whole - split) / whole;
}

struct SplitResult {
    bool found = false;
    std::size_t at = 0;
    double gain = 0.0;
};

// Best single split of [lo, hi): argmax of the cost reduction, earliest
// index on ties, candidates restricted to multiples of jump.
inline SplitResult best_split(const SegmentCost& cost, std::size_t lo, std::size_t hi,
                              std::size_t min_size, std::size_t jump) {
    SplitResult out;
    if (hi - lo < 2 * min_size)
        return out;
    double whole = cost(lo, hi);
    for (std::size_t t = lo + min_size; t + min_size <= hi; ++t) {
        if (t % jump != 0)
            continue;
        double g = whole - cost(lo, t) - cost(t, hi);
        if (!out.found || g > out.gain) {
            out.found = true;
            out.at = t;
            out.gain = g;
        }
    }
    return out;
}

} // namespace detail

// ----- PELT ----------------------------------------------------------------

inline std::vector<Detection> pelt_detect(const TimeSeries& ts, const SegmentCost& cost,
                                          const PenaltySpec& pen, std::size_t min_size,
                                          std::size_t jump) {
    std::size_t n = ts.size();
    detail::require_length(n, Method::Pelt);
    pen.validate();
    if (min_size * 2 > n)
        throw Error("pelt: min_size too large for series");
    if (jump < 1)
        throw Error("pelt: jump must be at least 1");

    std::vector<std::size_t> breaks;
    if (pen.n_bkps) {
        if (*pen.n_bkps > 0)
            breaks = detail::dynp_partition(cost, *pen.n_bkps, min_size);
    } else {
        breaks = detail::pelt_partition(cost, *pen.beta, min_size, jump);
    }

    std::vector<Detection> out;
    for (std::size_t b : breaks) {
        Detection d;
        d.index = b;
        d.method = Method::Pelt;
        d.confidence = detail::local_shift_confidence(ts.values, b);
        d.statistic = d.confidence;
        out.push_back(d);
    }
    return detail::finalize(std::move(out));
}

inline std::vector<Detection> pelt_detect(const TimeSeries& ts, const DetectorConfig& cfg = {}) {
    cfg.validate();
    std::size_t n = ts.size();
    detail::require_length(n, Method::Pelt);
    SegmentCost cost(ts.values);
    double beta = cfg.penalty.value_or(3.0 * std::log(static_cast<double>(n)));
    PenaltySpec pen = cfg.n_breaks ? PenaltySpec::with_breaks(*cfg.n_breaks)
                                   : PenaltySpec::with_beta(beta);
    std::size_t min_size =
        cfg.min_size.value_or(std::max<std::size_t>(2, static_cast<std::size_t>(0.02 * n)));
    return pelt_detect(ts, cost, pen, min_size, cfg.jump.value_or(1));
}

// ----- Binary segmentation ---------------------------------------------------

inline std::vector<Detection> binseg_detect(const TimeSeries& ts, const SegmentCost& cost,
                                            const PenaltySpec& pen, std::size_t min_size,
                                            std::size_t jump) {
    std::size_t n = ts.size();
    detail::require_length(n, Method::BinarySegmentation);
    pen.validate();
    if (min_size * 2 > n)
        throw Error("binary_segmentation: min_size too large for series");

    struct Node {
        std::size_t lo, hi;
        detail::SplitResult split;
    };
    std::vector<Node> nodes{{0, n, detail::best_split(cost, 0, n, min_size, jump)}};
    std::vector<std::size_t> breaks;

    auto pick = [&]() -> Node* {
        Node* best = nullptr;
        for (auto& nd : nodes)
            if (nd.split.found && (!best || nd.split.gain > best->split.gain))
                best = &nd;
        return best;
    };

    while (true) {
        if (pen.n_bkps && breaks.size() >= static_cast<std::size_t>(*pen.n_bkps))
            break;
        Node* nd = pick();
        if (!nd)
            break;
        if (pen.beta && nd->split.gain <= *pen.beta)
            break;
        std::size_t at = nd->split.at, lo = nd->lo, hi = nd->hi;
        breaks.push_back(at);
        *nd = {lo, at, detail::best_split(cost, lo, at, min_size, jump)};
        nodes.push_back({at, hi, detail::best_split(cost, at, hi, min_size, jump)});
    }
    std::sort(breaks.begin(), breaks.end());

    std::vector<Detection> out;
    for (std::size_t b : breaks) {
        Detection d;
        d.index = b;
        d.method = Method::BinarySegmentation;
        d.confidence = detail::variance_reduction_confidence(ts.values, b, min_size);
        d.statistic = d.confidence;
        out.push_back(d);
    }
    return detail::finalize(std::move(out));
}

inline std::vector<Detection> binseg_detect(const TimeSeries& ts, const DetectorConfig& cfg = {}) {
    cfg.validate();
    std::size_t n = ts.size();
    detail::require_length(n, Method::BinarySegmentation);
    SegmentCost cost(ts.values);
    double beta = cfg.penalty.value_or(2.0 * std::log(static_cast<double>(n)));
    PenaltySpec pen = cfg.n_breaks ? PenaltySpec::with_breaks(*cfg.n_breaks)
                                   : PenaltySpec::with_beta(beta);
    return binseg_detect(ts, cost, pen, cfg.min_size.value_or(2), cfg.jump.value_or(5));
}

// ----- Exact dynamic programming --------------------------------------------

inline std::vector<Detection> dynp_detect(const TimeSeries& ts, const SegmentCost& cost,
                                          int n_bkps, std::size_t min_size) {
    std::size_t n = ts.size();
    detail::require_length(n, Method::DynamicProgramming);
    if (n > 2000)
        std::cerr << "dynamic_programming: n=" << n << " is large; expect quadratic runtime\n";
    if (n_bkps < 0)
        throw Error("dynamic_programming: n_bkps must be non-negative");

    std::vector<std::size_t> breaks;
    if (n_bkps > 0)
        breaks = detail::dynp_partition(cost, n_bkps, min_size);

    std::vector<Detection> out;
    for (std::size_t b : breaks) {
        Detection d;
        d.index = b;
        d.method = Method::DynamicProgramming;
        double li = detail::local_improvement(cost, b, min_size);
        d.confidence = std::min(0.95, std::max(0.15, 0.3 + 0.6 * li));
        d.statistic = li;
        out.push_back(d);
    }
    return detail::finalize(std::move(out));
}

inline std::vector<Detection> dynp_detect(const TimeSeries& ts, const DetectorConfig& cfg = {}) {
    cfg.validate();
    std::size_t n = ts.size();
    detail::require_length(n, Method::DynamicProgramming);
    SegmentCost cost(ts.values);
    std::size_t min_size = cfg.min_size.value_or(2);
    int m;
    if (cfg.n_breaks) {
        m = *cfg.n_breaks;
    } else {
        // break count borrowed from a default-penalty PELT run
        double beta = cfg.penalty.value_or(3.0 * std::log(static_cast<double>(n)));
        std::size_t pelt_min =
            cfg.min_size.value_or(std::max<std::size_t>(2, static_cast<std::size_t>(0.02 * n)));
        m = static_cast<int>(detail::pelt_partition(cost, beta, pelt_min, 1).size());
    }
    return dynp_detect(ts, cost, m, min_size);
}

// ----- MOSUM -----------------------------------------------------------------

inline std::vector<Detection> mosum_detect(const TimeSeries& ts, std::size_t window,
                                           const PenaltySpec& pen, double threshold = 3.5) {
    std::size_t n = ts.size();
    detail::require_length(n, Method::Mosum);
    pen.validate();
    std::size_t w = window;
    if (w < 2)
        throw Error("mosum: window must be at least 2");
    if (2 * w >= n)
        throw Error("mosum: window too large for series");
    if (pen.beta)
        threshold = *pen.beta;

    std::span<const double> y = ts.values;
    std::vector<double> stat(n, 0.0);
    for (std::size_t k = w; k + w <= n; ++k) {
        double ml = detail::segment_mean(y, k - w, k);
        double mr = detail::segment_mean(y, k, k + w);
        double sse = 0;
        for (std::size_t i = k - w; i < k; ++i)
            sse += (y[i] - ml) * (y[i] - ml);
        for (std::size_t i = k; i < k + w; ++i)
            sse += (y[i] - mr) * (y[i] - mr);
        double pooled = sse / static_cast<double>(2 * w - 2);
        stat[k] = pooled > 0 ? std::abs(mr - ml) * std::sqrt(static_cast<double>(w) / (2.0 * pooled))
                             : 0.0;
    }

    std::vector<std::size_t> cands;
    for (std::size_t k = w; k + w <= n; ++k)
        if (stat[k] > threshold)
            cands.push_back(k);

    // merge chains of candidates within w/2 of each other, keeping the
    // strongest of each cluster
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < cands.size();) {
        std::size_t j = i;
        while (j + 1 < cands.size() && cands[j + 1] - cands[j] <= w / 2)
            ++j;
        std::size_t peak = cands[i];
        for (std::size_t k = i; k <= j; ++k)
            if (stat[cands[k]] > stat[peak])
                peak = cands[k];
        kept.push_back(peak);
        i = j + 1;
    }
    if (pen.n_bkps && kept.size() > static_cast<std::size_t>(*pen.n_bkps)) {
        std::sort(kept.begin(), kept.end(), [&](std::size_t a, std::size_t b) {
            return stat[a] != stat[b] ? stat[a] > stat[b] : a < b;
        });
        kept.resize(static_cast<std::size_t>(*pen.n_bkps));
    }

    std::vector<Detection> out;
    for (std::size_t k : kept) {
        Detection d;
        d.index = k;
        d.method = Method::Mosum;
        d.statistic = stat[k];
        double d_bound = static_cast<double>(std::min(k, n - k));
        d.confidence = 0.5 + 0.4 * std::min(1.0, static_cast<double>(w) / 20.0) +
                       0.1 * std::min(1.0, d_bound / static_cast<double>(w));
        out.push_back(d);
    }
    return detail::finalize(std::move(out));
}

inline std::vector<Detection> mosum_detect(const TimeSeries& ts, const DetectorConfig& cfg = {}) {
    cfg.validate();
    std::size_t n = ts.size();
    detail::require_length(n, Method::Mosum);
    std::size_t w = cfg.window.value_or(std::max<std::size_t>(10, n / 10));
    PenaltySpec pen = cfg.n_breaks ? PenaltySpec::with_breaks(*cfg.n_breaks)
                                   : PenaltySpec::with_beta(cfg.mosum_threshold);
    return mosum_detect(ts, w, pen, cfg.mosum_threshold);
}

// ----- Wild binary segmentation ----------------------------------------------

inline std::vector<Detection> wbs_detect(const TimeSeries& ts, double width,
                                         const PenaltySpec& pen, std::uint64_t seed,
                                         std::optional<std::size_t> n_intervals = std::nullopt) {
    std::size_t n = ts.size();
    detail::require_length(n, Method::WildBinarySegmentation);
    pen.validate();
    if (!(width > 0.0 && width < 0.5))
        throw Error("wild_binary_segmentation: width must lie in (0, 0.5)");
    std::size_t w = std::max<std::size_t>(10, static_cast<std::size_t>(width * static_cast<double>(n)));
    if (2 * w > n)
        throw Error("wild_binary_segmentation: interval width too large for series");

    std::size_t m_intervals = n_intervals.value_or(std::max<std::size_t>(100, 2 * n));
    SegmentCost cost(ts.values);
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> hits(n, 0);
    std::uniform_int_distribution<std::size_t> len_dist(w, 2 * w);
    for (std::size_t i = 0; i < m_intervals; ++i) {
        std::size_t len = len_dist(rng);
        std::uniform_int_distribution<std::size_t> start_dist(0, n - len);
        std::size_t lo = start_dist(rng);
        detail::SplitResult sp = detail::best_split(cost, lo, lo + len, 2, 1);
        if (sp.found && sp.gain > 0.0)
            ++hits[sp.at];
    }

    double min_hits = 0.05 * static_cast<double>(m_intervals);
    std::vector<std::size_t> cands;
    for (std::size_t t = 0; t < n; ++t)
        if (static_cast<double>(hits[t]) >= min_hits)
            cands.push_back(t);

    std::sort(cands.begin(), cands.end(), [&](std::size_t a, std::size_t b) {
        return hits[a] != hits[b] ? hits[a] > hits[b] : a < b;
    });
    std::vector<std::size_t> kept;
    for (std::size_t k : cands) {
        bool merged = false;
        for (std::size_t other : kept)
            if ((k > other ? k - other : other - k) <= w / 2) {
                merged = true;
                break;
            }
        if (!merged)
            kept.push_back(k);
    }
    if (pen.n_bkps && kept.size() > static_cast<std::size_t>(*pen.n_bkps))
        kept.resize(static_cast<std::size_t>(*pen.n_bkps));

    std::vector<Detection> out;
    for (std::size_t k : kept) {
        Detection d;
        d.index = k;
        d.method = Method::WildBinarySegmentation;
        d.statistic = static_cast<double>(hits[k]) / static_cast<double>(m_intervals);
        double d_bound = static_cast<double>(std::min(k, n - k));
        d.confidence = 0.65 + 0.25 * std::min(1.0, d_bound / static_cast<double>(w));
        out.push_back(d);
    }
    return detail::finalize(std::move(out));
}

inline std::vector<Detection> wbs_detect(const TimeSeries& ts, const DetectorConfig& cfg = {}) {
    cfg.validate();
    PenaltySpec pen = cfg.n_breaks ? PenaltySpec::with_breaks(*cfg.n_breaks)
                                   : PenaltySpec::with_beta(0.0);
    return wbs_detect(ts, cfg.wbs_width, pen, cfg.seed, cfg.wbs_intervals);
}

} // namespace tsbreak
