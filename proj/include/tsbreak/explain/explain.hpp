#pragma once

#include <atomic>
#include <cctype>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "tsbreak/ensemble.hpp"
#include "tsbreak/explain/context.hpp"
#include "tsbreak/explain/prompts.hpp"
#include "tsbreak/explain/provider.hpp"

namespace tsbreak {

enum class ExplainMode { Standard, Rag };

struct ExplainedBreak {
    EnsembleBreak brk;
    BreakContext context;
    std::string explanation;
    ExplainMode mode = ExplainMode::Standard;
    std::vector<std::string> retrieved_ids;
    bool ok = false;
    std::string error;
};

// Supplies ranked chunks for a break when mode=rag.
using Retriever = std::function<std::vector<RetrievedDoc>(const BreakContext&)>;

// Retrieval query: the series description plus one sentence locating the
// break in time and direction.
inline std::string rag_query(const BreakContext& ctx) {
    return ctx.data_description + ". A structural break with an " + ctx.direction +
           " shift was detected on " + ctx.break_date + ".";
}

inline std::vector<ExplainedBreak> explain_breaks(const std::vector<EnsembleBreak>& breaks,
                                                  const TimeSeries& ts,
                                                  const std::string& description,
                                                  ChatProvider& provider, ExplainMode mode,
                                                  const Retriever& retriever = {},
                                                  std::size_t concurrency = 2) {
    if (mode == ExplainMode::Rag && !retriever)
        throw Error("explain_breaks: rag mode requires a retriever");
    std::vector<ExplainedBreak> out(breaks.size());
    if (breaks.empty())
        return out;

    auto work = [&](std::size_t i) {
        ExplainedBreak& eb = out[i];
        eb.brk = breaks[i];
        eb.mode = mode;
        try {
            eb.context = build_context(ts, breaks[i], description);
            ChatRequest req;
            if (mode == ExplainMode::Rag) {
                std::vector<RetrievedDoc> docs = retriever(eb.context);
                for (const RetrievedDoc& d : docs)
                    eb.retrieved_ids.push_back(d.id);
                req = render_rag_prompt(eb.context, docs);
            } else {
                req = render_standard_prompt(eb.context);
            }
            eb.explanation = complete_with_retry(provider, req).text;
            eb.ok = true;
        } catch (const std::exception& e) {
            eb.ok = false;
            eb.error = e.what();
        }
    };

    std::size_t workers = std::min(concurrency == 0 ? 1 : concurrency, breaks.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < breaks.size(); ++i)
            work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < breaks.size();
                     i = next.fetch_add(1))
                    work(i);
            });
        for (std::thread& t : pool)
            t.join();
    }
    return out;
}

enum class Verdict { Correct, Incorrect };

namespace detail {

inline std::string lower(const std::string& s) {
    std::string t;
    t.reserve(s.size());
    for (char c : s)
        t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return t;
}

} // namespace detail

// First CORRECT/INCORRECT token by position, case-insensitive; a CORRECT that
// is merely the tail of INCORRECT belongs to the longer match.
inline Verdict parse_verdict(const std::string& text) {
    std::string t = detail::lower(text);
    std::size_t inc = t.find("incorrect");
    std::size_t cor = std::string::npos;
    for (std::size_t pos = t.find("correct"); pos != std::string::npos;
         pos = t.find("correct", pos + 1)) {
        if (pos >= 2 && t.compare(pos - 2, 2, "in") == 0)
            continue;
        cor = pos;
        break;
    }
    if (inc == std::string::npos && cor == std::string::npos)
        throw Error("judge verdict not parseable: '" + text.substr(0, 80) + "'");
    if (inc == std::string::npos)
        return Verdict::Correct;
    if (cor == std::string::npos)
        return Verdict::Incorrect;
    return cor < inc ? Verdict::Correct : Verdict::Incorrect;
}

inline Verdict judge_explanation(const std::string& explanation, const std::string& ground_truth,
                                 ChatProvider& provider) {
    ChatRequest req = render_judge_prompt(explanation, ground_truth);
    ChatResponse res = complete_with_retry(provider, req);
    return parse_verdict(res.text);
}

} // namespace tsbreak
