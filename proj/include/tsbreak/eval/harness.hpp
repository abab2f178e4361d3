#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tsbreak/auto_select.hpp"
#include "tsbreak/ensemble.hpp"
#include "tsbreak/explain/explain.hpp"
#include "tsbreak/rag/store.hpp"

namespace tsbreak {

struct BenchmarkCase {
    std::string name;
    TimeSeries ts;
    std::size_t truth = 0;
    std::string truth_date;
    std::string event;
    std::string source;
};

struct MatchResult {
    int tp = 0;
    int fp = 0;
    int fn = 0;
    std::optional<double> error; // |matched prediction - truth|
};

// Single ground-truth index matched to the nearest prediction within tol.
inline MatchResult match_breaks(const std::vector<std::size_t>& predicted, std::size_t truth,
                                int tol = 3) {
    if (tol < 0)
        throw Error("match_breaks: tolerance must be non-negative");
    MatchResult r;
    std::optional<std::size_t> best;
    long best_dist = 0;
    for (std::size_t p : predicted) {
        long d = std::labs(static_cast<long>(p) - static_cast<long>(truth));
        if (!best || d < best_dist || (d == best_dist && p < *best)) {
            best = p;
            best_dist = d;
        }
    }
    if (best && best_dist <= tol) {
        r.tp = 1;
        r.error = static_cast<double>(best_dist);
        r.fp = static_cast<int>(predicted.size()) - 1;
    } else {
        r.fn = 1;
        r.fp = static_cast<int>(predicted.size());
    }
    return r;
}

struct CaseOutcome {
    std::string name;
    std::vector<std::size_t> predicted;
    MatchResult match;
    bool failed = false;
    std::string message;
};

struct EvalResult {
    std::string strategy;
    std::vector<CaseOutcome> cases;
    int tp = 0, fp = 0, fn = 0;
    double precision = 0.0, recall = 0.0, f1 = 0.0, mte = 0.0;
};

namespace detail {

inline void finalize_metrics(EvalResult& r) {
    double err_sum = 0.0;
    int matched = 0;
    for (const CaseOutcome& c : r.cases) {
        r.tp += c.match.tp;
        r.fp += c.match.fp;
        r.fn += c.match.fn;
        if (c.match.error) {
            err_sum += *c.match.error;
            ++matched;
        }
    }
    r.precision = (r.tp + r.fp) > 0 ? static_cast<double>(r.tp) / (r.tp + r.fp) : 0.0;
    r.recall = (r.tp + r.fn) > 0 ? static_cast<double>(r.tp) / (r.tp + r.fn) : 0.0;
    r.f1 = (r.precision + r.recall) > 0
               ? 2.0 * r.precision * r.recall / (r.precision + r.recall)
               : 0.0;
    r.mte = matched > 0 ? err_sum / matched : 0.0;
}

} // namespace detail

// strategy: "ensemble", "auto", or one of the ten method ids.
inline std::vector<std::size_t> detect_with_strategy(const TimeSeries& ts,
                                                     const std::string& strategy) {
    std::vector<std::size_t> out;
    if (strategy == "ensemble") {
        for (const EnsembleBreak& b : ensemble_detect(ts).breaks)
            out.push_back(b.index);
    } else {
        Method m = strategy == "auto" ? select_method(ts).method : parse_method(strategy);
        for (const Detection& d : run_method(ts, m, DetectorConfig{}))
            out.push_back(d.index);
    }
    return out;
}

inline EvalResult run_benchmark(const std::vector<BenchmarkCase>& cases,
                                const std::string& strategy, int tol = 3) {
    if (cases.empty())
        throw Error("run_benchmark: no cases");
    EvalResult r;
    r.strategy = strategy;
    for (const BenchmarkCase& c : cases) {
        CaseOutcome o;
        o.name = c.name;
        try {
            o.predicted = detect_with_strategy(c.ts, strategy);
        } catch (const std::exception& e) {
            o.failed = true;
            o.message = e.what();
        }
        o.match = match_breaks(o.predicted, c.truth, tol);
        r.cases.push_back(std::move(o));
    }
    detail::finalize_metrics(r);
    return r;
}

// Fixture layout: <dir>/<case>/{data.csv, meta.json}; meta.json keys
// name, ground_truth_index, ground_truth_date, event, source, value_col,
// date_col.
inline std::vector<BenchmarkCase> load_benchmarks(const std::string& dir) {
    if (!std::filesystem::is_directory(dir))
        throw Error("benchmark directory '" + dir + "' not found");
    std::vector<std::string> subdirs;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_directory() &&
            std::filesystem::exists(entry.path() / "meta.json"))
            subdirs.push_back(entry.path().string());
    std::sort(subdirs.begin(), subdirs.end());
    if (subdirs.empty())
        throw Error("no benchmark cases under '" + dir + "'");

    std::vector<BenchmarkCase> cases;
    for (const std::string& sub : subdirs) {
        std::ifstream mf(sub + "/meta.json");
        if (!mf)
            throw Error("cannot open " + sub + "/meta.json");
        nlohmann::json meta = nlohmann::json::parse(mf);
        BenchmarkCase c;
        c.name = meta.at("name").get<std::string>();
        c.truth = meta.at("ground_truth_index").get<std::size_t>();
        c.truth_date = meta.value("ground_truth_date", "");
        c.event = meta.at("event").get<std::string>();
        c.source = meta.value("source", "");
        std::string value_col = meta.value("value_col", "value");
        std::string date_col = meta.value("date_col", "date");
        c.ts = load_csv(sub + "/data.csv", value_col,
                        date_col.empty() ? std::nullopt : std::make_optional(date_col));
        if (c.truth >= c.ts.size())
            throw Error("ground truth index out of range in " + sub);
        cases.push_back(std::move(c));
    }
    return cases;
}

enum class RagCondition { WithRelevant, ClutterOnly };

struct RagScenarioReport {
    std::size_t break_index = 0;
    std::string break_date;
    std::size_t corpus_docs = 0;
    std::vector<RankedChunk> retrieved;
    ChatRequest prompt;
    bool memo_retrieved = false;
    bool memo_first = false;
};

inline std::vector<RetrievedDoc> to_retrieved_docs(const std::vector<RankedChunk>& ranked) {
    std::vector<RetrievedDoc> out;
    for (const RankedChunk& rc : ranked)
        out.push_back({rc.doc_id, rc.title, format_date(rc.date), rc.text});
    return out;
}

// Ingests the bundled corpus into store_dir (recreated from scratch), finds
// the MAU break with the ensemble, retrieves top-3 and renders the prompt.
inline RagScenarioReport run_rag_scenario(const std::string& data_dir,
                                          const std::string& store_dir, RagCondition condition) {
    std::string mau_csv = data_dir + "/nexora/mau.csv";
    std::string corpus = data_dir + "/nexora/corpus";
    if (!std::filesystem::exists(mau_csv) || !std::filesystem::is_directory(corpus))
        throw Error("nexora fixture not found under '" + data_dir + "'");

    TimeSeries ts = load_csv(mau_csv, "mau", std::string("date"));
    EnsembleResult det = ensemble_detect(ts);
    if (det.breaks.empty())
        throw Error("no break detected on the MAU fixture");
    const EnsembleBreak* best = &det.breaks.front();
    for (const EnsembleBreak& b : det.breaks)
        if (b.votes > best->votes ||
            (b.votes == best->votes && b.confidence > best->confidence))
            best = &b;

    RagScenarioReport report;
    report.break_index = best->index;
    report.break_date = ts.label(best->index);

    std::filesystem::remove_all(store_dir);
    RagStore store(store_dir);
    std::vector<std::string> files;
    for (const auto& entry : std::filesystem::directory_iterator(corpus))
        if (entry.is_regular_file()) {
            std::string stem = entry.path().stem().string();
            bool is_memo = stem.find("helios") != std::string::npos;
            if (condition == RagCondition::ClutterOnly && is_memo)
                continue;
            files.push_back(entry.path().string());
        }
    std::sort(files.begin(), files.end());
    IngestReport ingest = store.add_paths(files);
    report.corpus_docs = ingest.stats.total_documents;

    BreakContext ctx =
        build_context(ts, *best, "monthly active users for Nexora Technologies");
    Date t = ts.dates.at(best->index);
    report.retrieved = store.retrieve(rag_query(ctx), t, RagConfig{});
    report.prompt = render_rag_prompt(ctx, to_retrieved_docs(report.retrieved));
    for (std::size_t i = 0; i < report.retrieved.size(); ++i) {
        bool is_memo = report.retrieved[i].doc_id.find("helios") != std::string::npos;
        if (is_memo) {
            report.memo_retrieved = true;
            if (i == 0)
                report.memo_first = true;
        }
    }
    return report;
}

} // namespace tsbreak
