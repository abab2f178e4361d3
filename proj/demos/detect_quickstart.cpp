// Minimal end-to-end run: synthesize a monthly series with two level shifts,
// detect them with the full ensemble, then show what auto-selection would
// have picked for the same data.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>

#include "tsbreak/auto_select.hpp"
#include "tsbreak/ensemble.hpp"

using namespace tsbreak;

namespace {

TimeSeries make_series() {
    TimeSeries ts;
    std::mt19937_64 rng(7);
    std::normal_distribution<double> noise(0.0, 0.4);
    std::chrono::year_month_day ymd{std::chrono::year{2015}, std::chrono::month{1},
                                    std::chrono::day{1}};
    for (std::size_t t = 0; t < 120; ++t) {
        double level = t < 48 ? 10.0 : (t < 90 ? 13.5 : 11.0);
        ts.values.push_back(level + noise(rng));
        ts.ticks.push_back(static_cast<long long>(t));
        ts.dates.push_back(std::chrono::sys_days{ymd});
        ymd += std::chrono::months{1};
        ymd = std::chrono::year_month_day{ymd.year(), ymd.month(), std::chrono::day{1}};
    }
    ts.validate();
    return ts;
}

} // namespace

int main() {
    TimeSeries ts = make_series();

    EnsembleResult res = ensemble_detect(ts);
    std::printf("%zu observations, %zu candidate detections, %zu breaks\n\n", ts.size(),
                res.pool.size(), res.breaks.size());
    for (const EnsembleBreak& b : res.breaks) {
        std::printf("break at %s (index %zu)\n", ts.label(b.index).c_str(), b.index);
        std::printf("  votes %zu, confidence %.2f, magnitude %+.2f\n", b.votes, b.confidence,
                    b.magnitude);
        std::printf("  agreeing methods:");
        for (Method m : b.methods)
            std::printf(" %s", std::string(method_id(m)).c_str());
        std::printf("\n");
    }

    Selection sel = select_method(ts);
    std::printf("\nauto-selection profile: n=%zu nu=%.2f rho=%.2f lambda=%.2f s=%.2f o=%.2f\n",
                sel.profile.n, sel.profile.nu, sel.profile.rho, sel.profile.lambda,
                sel.profile.s, sel.profile.o);
    std::printf("would pick: %s\n", std::string(method_id(sel.method)).c_str());
    std::vector<MethodScore> ranked = sel.scores;
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const MethodScore& a, const MethodScore& b) { return a.total > b.total; });
    for (std::size_t i = 0; i < ranked.size() && i < 3; ++i)
        std::printf("  %-22s %.2f\n", std::string(method_id(ranked[i].method)).c_str(),
                    ranked[i].total);
    return 0;
}
