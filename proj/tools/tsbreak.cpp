// Command-line front end: detection (single method, auto-selected, or
// ensemble), report generation, benchmark evaluation, and RAG store
// management.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tsbreak/eval/harness.hpp"
#include "tsbreak/report.hpp"

using namespace tsbreak;

namespace {

struct DetectArgs {
    std::string input;
    std::string value_col = "value";
    std::string date_col = "date";
    std::string method = "ensemble";
    std::size_t v_min = 5;
    double epsilon = 0.0; // 0 = adaptive
    std::uint64_t seed = 0;
    std::string out = "out";
    std::string description = "the provided series";
    std::string explain = "off"; // off | standard | rag
    std::string rag_dir;
    bool stub_llm = false;
};

std::unique_ptr<ChatProvider> make_provider(bool stub) {
    if (stub)
        return std::make_unique<StubChatProvider>();
    return std::make_unique<HttpChatProvider>();
}

int run_detect(const DetectArgs& args) {
    TimeSeries ts = load_csv(args.input, args.value_col,
                             args.date_col.empty()
                                 ? std::nullopt
                                 : std::make_optional(args.date_col));

    std::vector<ReportBreak> rows;
    std::vector<EnsembleBreak> breaks; // explanation input
    Selection selection;
    bool selected = false;

    if (args.method == "ensemble") {
        EnsembleConfig cfg;
        cfg.v_min = args.v_min;
        if (args.epsilon > 0.0)
            cfg.epsilon_override = args.epsilon;
        cfg.detector.seed = args.seed;
        EnsembleResult result = ensemble_detect(ts, cfg);
        for (const EnsembleFailure& f : result.failures)
            std::cerr << "tsbreak: method " << method_id(f.method)
                      << " skipped: " << f.message << "\n";
        breaks = result.breaks;
        for (const EnsembleBreak& b : breaks)
            rows.push_back(to_report_break(ts, b));
    } else {
        Method m;
        if (args.method == "auto") {
            selection = select_method(ts);
            selected = true;
            m = selection.method;
        } else {
            m = parse_method(args.method);
        }
        DetectorConfig cfg;
        cfg.seed = args.seed;
        for (const Detection& d : run_method(ts, m, cfg)) {
            ReportBreak row = to_report_break(ts, d);
            rows.push_back(row);
            EnsembleBreak b;
            b.location = static_cast<double>(d.index);
            b.index = d.index;
            b.confidence = d.confidence;
            b.votes = 1;
            b.methods = {m};
            b.magnitude = row.magnitude;
            b.direction = row.magnitude < 0 ? -1 : 1;
            breaks.push_back(b);
        }
    }

    std::vector<ExplainedBreak> explained;
    bool want_explain = args.explain != "off";
    if (want_explain && !breaks.empty()) {
        std::unique_ptr<ChatProvider> provider = make_provider(args.stub_llm);
        Retriever retriever;
        std::shared_ptr<RagStore> store;
        if (args.explain == "rag") {
            if (args.rag_dir.empty())
                throw Error("--explain rag requires --rag-dir");
            if (!ts.has_dates())
                throw Error("rag explanation requires a dated series");
            store = std::make_shared<RagStore>(args.rag_dir);
            retriever = [store](const BreakContext& ctx) {
                Date t = parse_date(ctx.break_date);
                return to_retrieved_docs(store->retrieve(rag_query(ctx), t, RagConfig{}));
            };
        }
        explained = explain_breaks(breaks, ts, args.description, *provider,
                                   args.explain == "rag" ? ExplainMode::Rag
                                                         : ExplainMode::Standard,
                                   retriever);
    }

    std::string md = render_breaks_markdown(args.input, args.method, ts, rows,
                                            selected ? &selection : nullptr,
                                            want_explain ? &explained : nullptr);
    std::filesystem::create_directories(args.out);
    write_text_file(args.out + "/breaks.md", md);
    write_text_file(args.out + "/breaks.svg", render_breaks_svg(ts, rows));
    write_text_file(args.out + "/results.json",
                    detect_results_json(args.input, args.method, ts, rows).dump(2) + "\n");
    std::cout << md;

    if (want_explain && !breaks.empty()) {
        bool any_ok = false;
        for (const ExplainedBreak& eb : explained)
            any_ok = any_ok || eb.ok;
        if (!any_ok) {
            std::cerr << "tsbreak: every explanation attempt failed\n";
            return 1;
        }
    }
    return 0;
}

int run_eval(const std::string& data_dir, const std::string& strategy, int tol,
             const std::string& out_dir) {
    std::vector<BenchmarkCase> cases = load_benchmarks(data_dir + "/benchmarks");
    EvalResult result = run_benchmark(cases, strategy, tol);
    std::string md = render_eval_markdown(result);
    std::filesystem::create_directories(out_dir);
    write_text_file(out_dir + "/eval.md", md);
    write_text_file(out_dir + "/results.json", eval_results_json(result, tol).dump(2) + "\n");
    std::cout << md;
    std::cout << "\nstrategy=" << result.strategy << " tp=" << result.tp << " fp=" << result.fp
              << " fn=" << result.fn << " precision=" << result.precision
              << " recall=" << result.recall << " f1=" << result.f1 << " mte=" << result.mte
              << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"structural break detection, ensemble voting, and explanation"};
    app.require_subcommand(1);

    DetectArgs d;
    CLI::App* detect = app.add_subcommand("detect", "detect breaks and write reports");
    detect->add_option("--input", d.input, "input CSV file")->required();
    detect->add_option("--value-col", d.value_col, "value column name");
    detect->add_option("--date-col", d.date_col, "date column name (empty to disable)");
    detect->add_option("--method", d.method, "ensemble, auto, or a method id");
    detect->add_option("--v-min", d.v_min, "minimum ensemble votes");
    detect->add_option("--epsilon", d.epsilon, "cluster radius override");
    detect->add_option("--seed", d.seed, "seed for randomized detectors");
    detect->add_option("--out", d.out, "output directory");
    detect->add_option("--description", d.description, "series description for prompts");
    detect->add_option("--explain", d.explain, "off, standard, or rag")
        ->check(CLI::IsMember({"off", "standard", "rag"}));
    detect->add_option("--rag-dir", d.rag_dir, "RAG store directory");
    detect->add_flag("--stub-llm", d.stub_llm, "use the offline stub provider");

    std::string eval_data = std::getenv("TSBREAK_DATA_DIR") ? std::getenv("TSBREAK_DATA_DIR")
                                                            : "data";
    std::string eval_strategy = "ensemble";
    int eval_tol = 3;
    std::string eval_out = "out";
    CLI::App* eval = app.add_subcommand("eval", "run the detection benchmark");
    eval->add_option("--data", eval_data, "data directory containing benchmarks/");
    eval->add_option("--strategy", eval_strategy, "ensemble, auto, or a method id");
    eval->add_option("--tol", eval_tol, "match tolerance in observations");
    eval->add_option("--out", eval_out, "output directory");

    CLI::App* rag = app.add_subcommand("rag", "manage the document store");
    rag->require_subcommand(1);
    std::string store_dir;

    std::vector<std::string> add_paths;
    CLI::App* rag_add = rag->add_subcommand("add", "ingest documents or directories");
    rag_add->add_option("--store", store_dir, "store directory")->required();
    rag_add->add_option("paths", add_paths, "files or directories")->required();

    CLI::App* rag_stats = rag->add_subcommand("stats", "print store statistics");
    rag_stats->add_option("--store", store_dir, "store directory")->required();

    std::string del_start, del_end;
    CLI::App* rag_del = rag->add_subcommand("delete-range", "delete documents by date");
    rag_del->add_option("--store", store_dir, "store directory")->required();
    rag_del->add_option("--start", del_start, "start date (inclusive)")->required();
    rag_del->add_option("--end", del_end, "end date (inclusive)")->required();

    std::string query_text, query_date;
    std::size_t query_k = 3;
    CLI::App* rag_query_cmd = rag->add_subcommand("query", "rank chunks for a query");
    rag_query_cmd->add_option("--store", store_dir, "store directory")->required();
    rag_query_cmd->add_option("--query", query_text, "query text")->required();
    rag_query_cmd->add_option("--date", query_date, "anchor date")->required();
    rag_query_cmd->add_option("--top-k", query_k, "results to return");

    CLI11_PARSE(app, argc, argv);

    try {
        if (detect->parsed())
            return run_detect(d);
        if (eval->parsed())
            return run_eval(eval_data, eval_strategy, eval_tol, eval_out);
        if (rag_add->parsed()) {
            RagStore store(store_dir);
            IngestReport r = store.add_paths(add_paths);
            std::cout << "Added: " << r.added << "\nSkipped: " << r.skipped
                      << "\nReplaced: " << r.replaced << "\nDocuments: "
                      << r.stats.total_documents << "\nChunks: " << r.stats.total_chunks
                      << "\n";
            return 0;
        }
        if (rag_stats->parsed()) {
            RagStats s = RagStore(store_dir).stats();
            std::cout << "Documents: " << s.total_documents << "\nChunks: " << s.total_chunks
                      << "\nBytes: " << s.store_bytes << "\n";
            return 0;
        }
        if (rag_del->parsed()) {
            RagStore store(store_dir);
            std::size_t n = store.delete_by_date(parse_date(del_start), parse_date(del_end));
            RagStats s = store.stats();
            std::cout << "Deleted: " << n << "\nDocuments: " << s.total_documents
                      << "\nChunks: " << s.total_chunks << "\n";
            return 0;
        }
        if (rag_query_cmd->parsed()) {
            RagConfig cfg;
            cfg.top_k = query_k;
            auto ranked = RagStore(store_dir).retrieve(query_text, parse_date(query_date), cfg);
            for (const RankedChunk& rc : ranked)
                std::cout << rc.doc_id << "#" << rc.ordinal << " score=" << rc.score
                          << " sim=" << rc.sim << " temporal=" << rc.temporal << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "tsbreak: error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
