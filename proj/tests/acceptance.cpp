// Acceptance gate: every promise the library makes at desk scale, one
// [PASS]/[FAIL] line each. Exits nonzero when anything fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsbreak/auto_select.hpp"
#include "tsbreak/detectors/run.hpp"
#include "tsbreak/ensemble.hpp"
#include "tsbreak/eval/harness.hpp"
#include "tsbreak/explain/explain.hpp"
#include "tsbreak/explain/prompts.hpp"
#include "tsbreak/rag/store.hpp"

#include "support/synth.hpp"

using namespace tsbreak;

namespace {

int g_failures = 0;

void require(bool cond, const std::string& msg) {
    if (!cond)
        throw std::runtime_error(msg);
}

bool rel_close(double a, double b, double tol) {
    double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) <= tol * scale;
}

void criterion(const std::string& name, const std::function<std::string()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    try {
        detail = body();
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", name.c_str(), secs,
                detail.empty() ? "" : ": ", detail.c_str());
    std::fflush(stdout);
    if (!ok)
        ++g_failures;
}

std::string data_dir() {
    const char* env = std::getenv("TSBREAK_DATA_DIR");
    return env ? env : "data";
}

// Total penalized cost of a given segmentation, summed left to right.
double partition_cost(const SegmentCost& cost, const std::vector<std::size_t>& breaks,
                      double beta) {
    double total = 0.0;
    std::size_t prev = 0;
    for (std::size_t b : breaks) {
        total += cost(prev, b);
        prev = b;
    }
    total += cost(prev, cost.size());
    return total + beta * static_cast<double>(breaks.size());
}

// Unpruned optimal-partitioning recursion over every admissible segmentation.
double bellman_optimum(const SegmentCost& cost, double beta, std::size_t min_size) {
    std::size_t n = cost.size();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> F(n + 1, inf);
    F[0] = -beta;
    for (std::size_t t = min_size; t <= n; ++t) {
        if (t + min_size > n && t != n)
            continue; // t would be a break too close to the right edge
        for (std::size_t s = 0; s + min_size <= t; ++s) {
            if (s != 0 && (s < min_size || F[s] == inf))
                continue;
            double v = F[s] + cost(s, t) + beta;
            if (v < F[t])
                F[t] = v;
        }
    }
    return F[n];
}

// Exhaustive minimum over every m-break partition with min_size spacing.
double brute_force_m_breaks(const SegmentCost& cost, int m, std::size_t min_size) {
    std::size_t n = cost.size();
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> picks;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (static_cast<int>(picks.size()) == m) {
            best = std::min(best, partition_cost(cost, picks, 0.0));
            return;
        }
        std::size_t remaining = static_cast<std::size_t>(m) - picks.size();
        for (std::size_t b = from; b + remaining * min_size <= n; ++b) {
            picks.push_back(b);
            rec(b + min_size);
            picks.pop_back();
        }
    };
    rec(min_size);
    return best;
}

TimeSeries random_steps(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> lvl(-8.0, 8.0);
    std::uniform_real_distribution<double> sig(0.1, 2.0);
    std::size_t regimes = 1 + rng() % 4;
    std::vector<std::pair<std::size_t, double>> segs;
    std::size_t used = 0;
    for (std::size_t r = 0; r < regimes; ++r) {
        std::size_t len = r + 1 == regimes ? n - used
                                           : std::max<std::size_t>(3, (n - used) / (regimes - r));
        if (used + len > n)
            len = n - used;
        if (len == 0)
            break;
        segs.push_back({len, lvl(rng)});
        used += len;
    }
    return synth::steps(segs, sig(rng), rng());
}

std::string c1_oracle_optimality() {
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20240901ull);

    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 10 + rng() % 51;
        TimeSeries ts = random_steps(rng, n);
        SegmentCost cost(ts.values);
        std::size_t min_size = std::max<std::size_t>(2, static_cast<std::size_t>(0.02 * n));
        double beta = 3.0 * std::log(static_cast<double>(n));

        std::vector<std::size_t> breaks;
        for (const Detection& d : pelt_detect(ts))
            breaks.push_back(d.index);
        double pelt_total = partition_cost(cost, breaks, beta);
        double optimum = bellman_optimum(cost, beta, min_size);
        require(rel_close(pelt_total, optimum, 1e-12),
                "pelt trial " + std::to_string(trial) + ": cost " + std::to_string(pelt_total) +
                    " vs optimum " + std::to_string(optimum));
    }

    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 12 + rng() % 29;
        int m = 1 + static_cast<int>(rng() % 3);
        TimeSeries ts = random_steps(rng, n);
        SegmentCost cost(ts.values);
        std::vector<std::size_t> breaks;
        for (const Detection& d : dynp_detect(ts, cost, m, 2))
            breaks.push_back(d.index);
        require(static_cast<int>(breaks.size()) == m, "dynp returned wrong break count");
        double dynp_total = partition_cost(cost, breaks, 0.0);
        double best = brute_force_m_breaks(cost, m, 2);
        require(rel_close(dynp_total, best, 1e-12),
                "dynp trial " + std::to_string(trial) + ": cost " + std::to_string(dynp_total) +
                    " vs brute force " + std::to_string(best));
    }

    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    require(secs < 60.0, "runtime exceeded 60 s");
    return "pelt matches the exhaustive optimum on 200 series; dynp matches brute force on 100";
}

std::string c2_statistic_recomputation() {
    std::mt19937_64 rng(77u);
    int cusum_checked = 0, mosum_checked = 0;

    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 40 + rng() % 161;
        std::size_t tau = n / 4 + rng() % (n / 2);
        double delta = 2.0 + static_cast<double>(rng() % 7);
        TimeSeries ts = synth::steps({{tau, 0.0}, {n - tau, delta}}, 1.0, rng());

        std::vector<Detection> cd = cusum_detect(ts);
        require(cd.size() == 1, "cusum did not fire on a strong step");
        OlsFit fit = ols_fit(ts.values, Trend::Const);
        double sigma = std::sqrt(fit.residual_variance);
        double ebar = mean(fit.residuals);
        double scale = sigma * std::sqrt(static_cast<double>(n));
        double cum = 0.0, best = 0.0;
        for (std::size_t t = 0; t + 2 <= n; ++t) {
            cum += fit.residuals[t] - ebar;
            if (t == 0)
                continue;
            double s = cum / scale;
            if (std::abs(s) > std::abs(best))
                best = s;
        }
        require(rel_close(cd[0].statistic, best, 1e-10), "cusum S* mismatch");
        ++cusum_checked;

        std::size_t w = std::max<std::size_t>(10, n / 10);
        std::vector<Detection> md = mosum_detect(ts);
        require(!md.empty(), "mosum did not fire on a strong step");
        for (const Detection& d : md) {
            std::size_t k = d.index;
            require(k >= w && k + w <= n, "mosum index outside admissible range");
            double ml = 0.0, mr = 0.0;
            for (std::size_t i = k - w; i < k; ++i)
                ml += ts.values[i];
            for (std::size_t i = k; i < k + w; ++i)
                mr += ts.values[i];
            ml /= static_cast<double>(w);
            mr /= static_cast<double>(w);
            double sse = 0.0;
            for (std::size_t i = k - w; i < k; ++i)
                sse += (ts.values[i] - ml) * (ts.values[i] - ml);
            for (std::size_t i = k; i < k + w; ++i)
                sse += (ts.values[i] - mr) * (ts.values[i] - mr);
            double pooled = sse / static_cast<double>(2 * w - 2);
            double t_k = pooled > 0.0
                             ? std::abs(mr - ml) *
                                   std::sqrt(static_cast<double>(w) / (2.0 * pooled))
                             : 0.0;
            require(rel_close(d.statistic, t_k, 1e-10), "mosum T_k mismatch");
            ++mosum_checked;
        }
    }
    return "CUSUM S* on " + std::to_string(cusum_checked) + " fixtures, MOSUM T_k on " +
           std::to_string(mosum_checked) + " detections, all within 1e-10";
}

// Literal transcriptions of the published score matrices; row order matches
// the method catalog.
double lit_f1(std::size_t row, std::size_t n) {
    if (n < 50) {
        const double v[10] = {0.3,
                              n >= 20 ? 0.9 : 0.2,
                              n >= 40 ? 0.8 : 0.4,
                              n >= 30 ? 0.8 : 0.3,
                              0.6,
                              n >= 30 ? 0.8 : 0.5,
                              0.4,
                              n >= 40 ? 0.8 : 0.3,
                              0.4,
                              n >= 50 ? 0.4 : 0.1};
        return v[row];
    }
    if (n < 1000) {
        const double v[10] = {0.9, 0.9, 0.8, 0.8, 0.9,
                              0.8, 0.7, 0.8, n >= 100 ? 0.8 : 0.4, n >= 100 ? 0.9 : 0.4};
        return v[row];
    }
    const double v[10] = {0.6, 0.9, 0.8, 0.8, 0.9, 0.8, 0.7, 0.8, 0.8, 0.9};
    return v[row];
}

constexpr double kLitF2[10][3] = {{0.9, 0.6, 0.3}, {0.7, 0.8, 0.6}, {0.8, 0.7, 0.4},
                                  {0.8, 0.6, 0.4}, {0.8, 0.9, 0.7}, {0.7, 0.8, 0.7},
                                  {0.8, 0.8, 0.6}, {0.6, 0.7, 0.6}, {0.5, 0.8, 0.9},
                                  {0.6, 0.8, 0.8}};
constexpr double kLitF3[10][3] = {{0.7, 0.7, 0.5}, {0.7, 0.8, 0.6}, {0.7, 0.8, 0.6},
                                  {0.7, 0.6, 0.4}, {0.7, 0.7, 0.5}, {0.7, 0.7, 0.5},
                                  {0.7, 0.7, 0.5}, {0.7, 0.7, 0.6}, {0.7, 0.6, 0.4},
                                  {0.7, 0.9, 1.0}};
constexpr double kLitF4[10][2] = {{0.7, 0.4}, {0.7, 0.5}, {0.7, 0.5}, {0.7, 0.3}, {0.7, 0.6},
                                  {0.7, 0.6}, {0.7, 0.6}, {0.7, 0.5}, {0.7, 0.5}, {0.7, 0.9}};
constexpr double kLitF5[10][3] = {{0.7, 0.6, 0.4}, {0.7, 0.9, 0.8}, {0.7, 0.7, 0.5},
                                  {0.7, 0.8, 0.6}, {0.7, 0.9, 1.0}, {0.7, 0.8, 0.9},
                                  {0.7, 0.6, 0.4}, {0.7, 0.7, 0.6}, {0.7, 0.5, 0.3},
                                  {0.7, 0.7, 0.6}};
constexpr double kLitF6[10][2] = {{0.9, 0.3}, {0.8, 0.5}, {0.8, 0.4}, {0.6, 1.0}, {0.8, 0.6},
                                  {0.8, 0.6}, {0.8, 0.6}, {0.8, 0.5}, {0.7, 0.5}, {0.7, 0.8}};
constexpr double kLitF7[10][2] = {{0.7, 0.3}, {0.7, 0.6}, {0.7, 0.4}, {0.7, 0.4}, {0.7, 0.7},
                                  {0.7, 0.7}, {0.7, 0.7}, {0.7, 0.6}, {0.7, 0.9}, {0.7, 0.8}};

std::string c3_score_matrix_fidelity() {
    const std::size_t ns[] = {10, 15, 19, 20, 25, 29, 30,  35,  39,  40,
                              45, 49, 50, 75, 99, 100, 500, 999, 1000, 2000};
    const double nus[] = {0.0, 0.1, 0.19, 0.2, 0.3, 0.49, 0.5, 1.2};
    const double rhos[] = {0.0, 0.19, 0.2, 0.5, 0.59, 0.6, 0.95};
    const double lambdas[] = {0.0, 0.49, 0.5, 0.8};
    const double ss[] = {0.0, 0.04, 0.05, 0.06, 0.7};
    const double os[] = {0.0, 0.049, 0.05, 0.3};

    long checked = 0;
    for (std::size_t n : ns)
        for (double nu : nus)
            for (double rho : rhos)
                for (double lambda : lambdas)
                    for (double s : ss)
                        for (double o : os) {
                            DataProfile p;
                            p.n = n;
                            p.nu = nu;
                            p.rho = rho;
                            p.lambda = lambda;
                            p.s = s;
                            p.o = o;
                            for (std::size_t row = 0; row < kAllMethods.size(); ++row) {
                                MethodScore ms = score_method(p, kAllMethods[row]);
                                double want[7] = {
                                    lit_f1(row, n),
                                    kLitF2[row][nu < 0.2 ? 0 : (nu < 0.5 ? 1 : 2)],
                                    kLitF3[row][rho < 0.2 ? 0 : (rho < 0.6 ? 1 : 2)],
                                    kLitF4[row][lambda < 0.5 ? 0 : 1],
                                    kLitF5[row][n < 100 ? 0 : (n < 1000 ? 1 : 2)],
                                    kLitF6[row][s <= 0.05 ? 0 : 1],
                                    kLitF7[row][o < 0.05 ? 0 : 1]};
                                for (int i = 0; i < 7; ++i) {
                                    require(ms.f[static_cast<std::size_t>(i)] == want[i],
                                            "f" + std::to_string(i + 1) + " mismatch, row " +
                                                std::to_string(row));
                                    ++checked;
                                }
                            }
                        }

    DataProfile ex;
    ex.n = 500;
    ex.nu = 0.1;
    ex.rho = 0.1;
    ex.lambda = 0.2;
    ex.s = 0.01;
    ex.o = 0.01;
    MethodScore pelt_score = score_method(ex, Method::Pelt);
    const double want[7] = {0.9, 0.8, 0.7, 0.7, 0.9, 0.8, 0.7};
    for (int i = 0; i < 7; ++i)
        require(pelt_score.f[static_cast<std::size_t>(i)] == want[i],
                "worked example f" + std::to_string(i + 1));
    require(std::abs(pelt_score.total - 5.5) < 1e-9, "worked example total is not 5.5");

    DataProfile za = ex;
    za.s = 0.50;
    require(score_method(za, Method::ZivotAndrews).f[5] == 1.0, "zivot_andrews f6");
    DataProfile pr = ex;
    pr.rho = 0.9;
    require(score_method(pr, Method::Prophet).f[2] == 1.0, "prophet strong-trend f3");

    return std::to_string(checked) + " f-values bit-exact; PELT worked example totals 5.5";
}

std::string c4_ensemble_algebra() {
    std::mt19937_64 rng(4242u);
    std::uniform_real_distribution<double> conf(0.0, 1.0);
    const std::vector<double> no_values;

    for (int pool_i = 0; pool_i < 500; ++pool_i) {
        std::size_t count = 1 + rng() % 60;
        bool zero_conf = pool_i % 5 == 0;
        double epsilon = 1.0 + static_cast<double>(rng() % 50) / 10.0;
        std::vector<Detection> pool;
        for (std::size_t i = 0; i < count; ++i) {
            Detection d;
            d.index = rng() % 400;
            d.method = kAllMethods[rng() % kAllMethods.size()];
            d.confidence = zero_conf ? 0.0 : conf(rng);
            pool.push_back(d);
        }

        std::vector<DetectionCluster> clusters = cluster_detections(pool, epsilon);

        std::size_t members = 0;
        std::size_t prev_max = 0;
        bool first = true;
        for (const DetectionCluster& c : clusters) {
            members += c.members.size();
            require(!c.members.empty(), "empty cluster");
            require(c.span_min <= c.span_max, "cluster span inverted");
            if (!first)
                require(static_cast<double>(c.span_min - prev_max) > epsilon,
                        "adjacent clusters closer than epsilon");
            first = false;
            prev_max = c.span_max;

            std::size_t last = c.members.front().index;
            for (const Detection& d : c.members) {
                require(d.index >= last || d.index >= c.span_min, "cluster members unsorted");
                require(d.index >= c.span_min && d.index <= c.span_max, "member outside span");
                last = d.index;
            }

            std::set<Method> uniq;
            for (const Detection& d : c.members)
                uniq.insert(d.method);
            require(c.votes == uniq.size(), "vote count != unique methods");
            require(c.votes >= 1 && c.votes <= kAllMethods.size(), "vote bounds violated");
            require(c.votes <= c.members.size(), "votes exceed member count");

            EnsembleBreak b = aggregate_cluster(c, no_values);
            require(b.votes == c.votes, "aggregate vote mismatch");
            double lo = static_cast<double>(c.span_min), hi = static_cast<double>(c.span_max);
            require(b.location >= lo - 1e-9 && b.location <= hi + 1e-9,
                    "centroid outside cluster span");
            if (zero_conf) {
                double mean_idx = 0.0;
                for (const Detection& d : c.members)
                    mean_idx += static_cast<double>(d.index);
                mean_idx /= static_cast<double>(c.members.size());
                require(std::abs(b.location - mean_idx) <= 1e-12,
                        "zero-confidence fallback is not the plain mean");
            }
        }
        require(members == pool.size(), "clusters do not partition the pool");

        std::size_t prev_survivors = clusters.size() + 1;
        for (std::size_t v = 1; v <= kAllMethods.size() + 1; ++v) {
            std::size_t survivors = 0;
            for (const DetectionCluster& c : clusters)
                if (c.votes >= v)
                    ++survivors;
            require(survivors <= prev_survivors, "survivor count increased with v_min");
            prev_survivors = survivors;
        }

        std::vector<Detection> shuffled = pool;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        std::vector<DetectionCluster> reclustered = cluster_detections(shuffled, epsilon);
        require(reclustered.size() == clusters.size(), "permutation changed cluster count");
        for (std::size_t i = 0; i < clusters.size(); ++i) {
            EnsembleBreak a = aggregate_cluster(clusters[i], no_values);
            EnsembleBreak b = aggregate_cluster(reclustered[i], no_values);
            require(a.location == b.location && a.index == b.index && a.votes == b.votes &&
                        a.confidence == b.confidence && a.methods == b.methods,
                    "permutation changed an aggregated break");
        }
    }

    // Raising v_min through the full pipeline never introduces break indices.
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        TimeSeries ts = synth::steps({{40, 0.0}, {40, 6.0}, {40, -2.0}}, 1.0, seed);
        std::set<std::size_t> prev;
        bool have_prev = false;
        for (std::size_t v = 1; v <= kAllMethods.size(); ++v) {
            EnsembleConfig cfg;
            cfg.v_min = v;
            std::set<std::size_t> got;
            for (const EnsembleBreak& b : ensemble_detect(ts, cfg).breaks)
                got.insert(b.index);
            if (have_prev)
                for (std::size_t idx : got)
                    require(prev.count(idx) == 1, "raising v_min introduced a new break");
            prev = got;
            have_prev = true;
        }
    }

    const std::pair<std::size_t, double> spots[] = {
        {10, 2.0}, {40, 2.0}, {100, 2.5}, {200, 5.0}, {400, 5.0}};
    for (auto [n, want] : spots)
        require(adaptive_epsilon(n) == want,
                "adaptive epsilon at n=" + std::to_string(n));

    return "500 pools: partition, vote bounds, v_min monotone, permutation-invariant, "
           "zero-confidence fallback; epsilon spots match";
}

std::string c5_staircase() {
    auto t0 = std::chrono::steady_clock::now();
    int good = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        TimeSeries ts = synth::steps({{30, 0.0}, {30, 5.0}, {30, 10.0}}, 0.2, seed);
        EnsembleConfig cfg;
        cfg.v_min = 5;
        EnsembleResult res = ensemble_detect(ts, cfg);
        if (res.breaks.size() != 2)
            continue;
        auto near = [](std::size_t got, std::size_t want) {
            return got >= want - 2 && got <= want + 2;
        };
        if (near(res.breaks[0].index, 30) && near(res.breaks[1].index, 60))
            ++good;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    require(good >= 48, "only " + std::to_string(good) + "/50 seeds produced the two breaks");
    require(secs < 30.0, "runtime exceeded 30 s");
    return std::to_string(good) + "/50 seeds found exactly 2 breaks within +/-2";
}

std::string c6_benchmarks() {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<BenchmarkCase> cases = load_benchmarks(data_dir() + "/benchmarks");
    require(cases.size() == 7, "expected 7 bundled cases, got " + std::to_string(cases.size()));

    EvalResult ens = run_benchmark(cases, "ensemble", 3);
    EvalResult aut = run_benchmark(cases, "auto", 3);

    require(ens.recall >= 0.70, "ensemble recall " + std::to_string(ens.recall) + " < 0.70");
    require(std::abs(ens.f1 - 0.706) <= 0.15,
            "ensemble F1 " + std::to_string(ens.f1) + " outside 0.706 +/- 0.15");
    require(aut.f1 < ens.f1, "auto-selection F1 " + std::to_string(aut.f1) +
                                 " not below ensemble F1 " + std::to_string(ens.f1));

    bool nile_ok = false;
    for (const CaseOutcome& c : ens.cases)
        if (c.name == "nile")
            nile_ok = c.match.tp == 1 && c.match.error && *c.match.error <= 3.0;
    require(nile_ok, "nile break not detected within +/-3 of truth");

    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    require(secs < 300.0, "runtime exceeded 5 min");

    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "ensemble precision %.3f recall %.3f F1 %.3f; auto F1 %.3f; nile within 3",
                  ens.precision, ens.recall, ens.f1, aut.f1);
    return buf;
}

std::string c7_rag_determinism() {
    std::string store =
        (std::filesystem::temp_directory_path() / "tsbreak_acceptance_store").string();

    RagScenarioReport with = run_rag_scenario(data_dir(), store, RagCondition::WithRelevant);
    require(with.corpus_docs == 31, "with_relevant corpus is not 31 docs");
    require(!with.retrieved.empty() && with.retrieved.size() <= 3, "top-3 retrieval size");
    require(with.memo_retrieved, "memo absent from top-3");
    require(with.memo_first, "memo not ranked first");
    for (const RankedChunk& rc : with.retrieved)
        require(std::abs(rc.score - (0.7 * rc.sim + 0.3 * rc.temporal)) <= 1e-12,
                "hybrid score does not recompose from parts");

    RagScenarioReport clutter = run_rag_scenario(data_dir(), store, RagCondition::ClutterOnly);
    require(clutter.corpus_docs == 30, "clutter_only corpus is not 30 docs");
    require(clutter.prompt.system.find("Helios") == std::string::npos &&
                clutter.prompt.user.find("Helios") == std::string::npos,
            "clutter_only prompt mentions Helios");

    Date t = parse_date("2022-07-01");
    require(temporal_relevance(t, t, 30) == 1.0, "temporal at offset 0");
    require(temporal_relevance(parse_date("2022-06-16"), t, 30) == 0.5, "temporal at delta/2");
    require(temporal_relevance(parse_date("2022-07-16"), t, 30) == 0.5,
            "temporal symmetric at delta/2");
    require(temporal_relevance(parse_date("2022-06-01"), t, 30) == 0.0, "temporal at delta");

    std::filesystem::remove_all(store);
    return "memo first of 31; clutter prompt Helios-free; hybrid and temporal scores exact";
}

std::string c8_prompt_goldens() {
    BreakContext ctx;
    ctx.break_date = "2022-07-01";
    ctx.confidence = 0.833;
    ctx.magnitude = 30.0;
    ctx.direction = "upward";
    ctx.before = {120.5, 3.25, "flat"};
    ctx.after = {150.5, 4.75, "increasing"};
    ctx.data_description = "monthly active users";

    ChatRequest std_req = render_standard_prompt(ctx);
    require(std_req.temperature == 0.3 && std_req.max_tokens == 300, "standard sampling params");
    const std::string std_system =
        "You are a data analyst expert in time series analysis.\n"
        "\n"
        "Your task is to explain structural breaks - significant, persistent changes in time "
        "series data.\n"
        "\n"
        "Provide clear, concise explanations that:\n"
        "1. Describe what changed (magnitude and direction)\n"
        "2. Suggest possible causes based on the timing and statistical evidence\n"
        "3. Think of possible external events near the break date (e.g. macro, policy, company "
        "news..), flagging speculation if unsure\n"
        "4. Assess the significance of the change\n"
        "5. Avoid speculation beyond what the data supports\n"
        "\n"
        "Be specific and professional.";
    const std::string std_user =
        "Analyze this structural break in monthly active users:\n"
        "\n"
        "Break Details:\n"
        "- Date: 2022-07-01\n"
        "- Confidence: 83.3%\n"
        "- Magnitude: 30.00 (upward shift)\n"
        "\n"
        "Before Break (30-day window):\n"
        "- Mean: 120.50\n"
        "- Std Dev: 3.25\n"
        "- Trend: flat\n"
        "\n"
        "After Break (30-day window):\n"
        "- Mean: 150.50\n"
        "- Std Dev: 4.75\n"
        "- Trend: increasing\n"
        "\n"
        "Provide a brief explanation of this structural break.";
    require(std_req.system == std_system, "standard system prompt differs");
    require(std_req.user == std_user, "standard user prompt differs");

    BreakContext rctx;
    rctx.break_date = "2022-07-01";
    rctx.confidence = 0.9;
    rctx.magnitude = 35000.0;
    rctx.direction = "upward";
    rctx.data_description = "monthly active users";
    std::vector<RetrievedDoc> docs = {
        {"memo_a", "Launch memo", "2022-07-20", "Engagement rose after the launch."},
        {"note_b", "Ops note", "2022-06-30", "Capacity expanded ahead of release."},
        {"news_c", "Press clip", "2022-08-02", "Coverage of the new feature."},
    };
    ChatRequest rag_req = render_rag_prompt(rctx, docs);
    require(rag_req.temperature == 0.3 && rag_req.max_tokens == 400, "rag sampling params");
    const std::string rag_system =
        "You are a data analyst expert in time series analysis.\n"
        "\n"
        "You have access to relevant documents that may explain the structural break.\n"
        "\n"
        "When explaining:\n"
        "1. Connect the statistical evidence to events in the documents\n"
        "2. Be specific about which information supports your explanation\n"
        "3. Distinguish between correlation and likely causation\n"
        "4. Keep explanations concise and actionable";
    const std::string rag_user =
        "Analyze this structural break with additional context:\n"
        "\n"
        "Break Information:\n"
        "- Date: 2022-07-01\n"
        "- Confidence: 0.9\n"
        "- Magnitude: 35000\n"
        "- Direction: upward\n"
        "\n"
        "Relevant Documents:\n"
        "[1] Launch memo (2022-07-20)\n"
        "Engagement rose after the launch.\n"
        "\n"
        "[2] Ops note (2022-06-30)\n"
        "Capacity expanded ahead of release.\n"
        "\n"
        "[3] Press clip (2022-08-02)\n"
        "Coverage of the new feature.\n"
        "\n"
        "Explain this break using both the statistical evidence and document context. Be "
        "specific about how the documents relate to the observed change.";
    require(rag_req.system == rag_system, "rag system prompt differs");
    require(rag_req.user == rag_user, "rag user prompt differs");

    ChatRequest judge_req = render_judge_prompt("The break follows a product launch.",
                                                "Project launch on 2022-07-15.");
    require(judge_req.temperature == 0.0, "judge temperature");
    const std::string judge_system =
        "You are an expert evaluator assessing the quality of changepoint explanations. Your "
        "task is to determine whether a generated explanation correctly identifies the "
        "underlying event that caused a structural break in time series data.\n"
        "\n"
        "You will receive:\n"
        "1. The LLM's explanation of a detected changepoint\n"
        "2. The ground truth event that actually caused the changepoint\n"
        "\n"
        "Evaluate whether the explanation correctly identifies the core causal event. The "
        "explanation does not need to match the ground truth word-for-word, but must identify "
        "the same fundamental event or cause.\n"
        "\n"
        "Output only: CORRECT or INCORRECT";
    const std::string judge_user =
        "Evaluate the following changepoint explanation:\n"
        "\n"
        "LLM Explanation:\n"
        "The break follows a product launch.\n"
        "\n"
        "Ground Truth Event:\n"
        "Project launch on 2022-07-15.\n"
        "\n"
        "Does the explanation correctly identify the event that caused the changepoint?\n"
        "Output only: CORRECT or INCORRECT";
    require(judge_req.system == judge_system, "judge system prompt differs");
    require(judge_req.user == judge_user, "judge user prompt differs");

    require(parse_verdict("CORRECT") == Verdict::Correct, "verdict CORRECT");
    require(parse_verdict("INCORRECT") == Verdict::Incorrect, "verdict INCORRECT");
    bool threw = false;
    try {
        parse_verdict("the model refused to answer");
    } catch (const Error&) {
        threw = true;
    }
    require(threw, "garbage verdict must throw");

    return "standard, RAG, and judge prompts byte-identical; judge parser maps all three cases";
}

std::string c9_llm_accuracy_substitution() {
    return "explanation-accuracy tables are not reproducible at desk scale (live frontier "
           "models and a judge model required); covered instead by the prompt goldens, the "
           "stub-provider pipeline tests, and the judge-parse checks";
}

} // namespace

int main() {
    std::printf("tsbreak acceptance gate\n");
    criterion("C1 oracle optimality (PELT, DynP)", c1_oracle_optimality);
    criterion("C2 statistic recomputation (CUSUM, MOSUM)", c2_statistic_recomputation);
    criterion("C3 score-matrix fidelity", c3_score_matrix_fidelity);
    criterion("C4 ensemble algebra", c4_ensemble_algebra);
    criterion("C5 staircase detection", c5_staircase);
    criterion("C6 benchmark reproduction", c6_benchmarks);
    criterion("C7 RAG determinism", c7_rag_determinism);
    criterion("C8 prompt goldens and judge parsing", c8_prompt_goldens);
    criterion("C9 LLM accuracy substitution", c9_llm_accuracy_substitution);
    if (g_failures == 0)
        std::printf("all 9 criteria passed\n");
    else
        std::printf("%d criteria FAILED\n", g_failures);
    return g_failures;
}
