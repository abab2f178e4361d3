// Full RAG pipeline on the bundled Nexora scenario: detect the MAU break,
// ingest the document corpus, retrieve context for the break date, and render
// a grounded explanation. Uses the deterministic stub provider; swap in
// HttpChatProvider to call a live model.
//
// Usage: rag_explain [data-dir]   (default: data)

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "tsbreak/ensemble.hpp"
#include "tsbreak/explain/explain.hpp"
#include "tsbreak/rag/store.hpp"

using namespace tsbreak;

int main(int argc, char** argv) {
    std::string data = argc > 1 ? argv[1] : "data";
    TimeSeries ts = load_csv(data + "/nexora/mau.csv", "mau", std::string("date"));

    EnsembleResult res = ensemble_detect(ts);
    if (res.breaks.empty()) {
        std::printf("no breaks found\n");
        return 1;
    }
    std::printf("detected %zu break(s); first at %s with %zu votes\n", res.breaks.size(),
                ts.label(res.breaks[0].index).c_str(), res.breaks[0].votes);

    std::string store_dir =
        (std::filesystem::temp_directory_path() / "tsbreak_demo_store").string();
    std::filesystem::remove_all(store_dir);
    RagStore store(store_dir);
    IngestReport rep = store.add_paths({data + "/nexora/corpus"});
    std::printf("ingested %zu documents (%zu chunks)\n\n", rep.stats.total_documents,
                rep.stats.total_chunks);

    Retriever retriever = [&](const BreakContext& ctx) {
        std::vector<RetrievedDoc> docs;
        for (const RankedChunk& rc : store.retrieve(rag_query(ctx), parse_date(ctx.break_date)))
            docs.push_back({rc.doc_id, rc.title, format_date(rc.date), rc.text});
        return docs;
    };

    StubChatProvider provider;
    std::vector<ExplainedBreak> explained = explain_breaks(
        res.breaks, ts, "monthly active users for Nexora Technologies, in millions", provider,
        ExplainMode::Rag, retriever);

    for (const ExplainedBreak& eb : explained) {
        std::printf("== break on %s ==\n", eb.context.break_date.c_str());
        std::printf("retrieved:");
        for (const std::string& id : eb.retrieved_ids)
            std::printf(" %s", id.c_str());
        std::printf("\n%s\n\n", eb.ok ? eb.explanation.c_str() : eb.error.c_str());
    }

    std::filesystem::remove_all(store_dir);
    return 0;
}
