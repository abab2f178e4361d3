#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "tsbreak/explain/context.hpp"

namespace tsbreak {

struct ChatRequest {
    std::string system;
    std::string user;
    double temperature = 0.3;
    int max_tokens = 300;
};

struct ChatResponse {
    std::string text;
    std::string provider;
    std::string model;
};

// One retrieved chunk as it appears in a prompt.
struct RetrievedDoc {
    std::string id;
    std::string title;
    std::string date;
    std::string text;
};

namespace detail {

inline std::string fmt2(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", x);
    return buf;
}

inline std::string fmt_pct1(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.1f%%", 100.0 * x);
    return buf;
}

inline std::string fmt_plain(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", x);
    return buf;
}

} // namespace detail

inline constexpr const char* kStandardSystemPrompt =
    "You are a data analyst expert in time series analysis.\n"
    "\n"
    "Your task is to explain structural breaks - significant, persistent changes in time series "
    "data.\n"
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

inline constexpr const char* kRagSystemPrompt =
    "You are a data analyst expert in time series analysis.\n"
    "\n"
    "You have access to relevant documents that may explain the structural break.\n"
    "\n"
    "When explaining:\n"
    "1. Connect the statistical evidence to events in the documents\n"
    "2. Be specific about which information supports your explanation\n"
    "3. Distinguish between correlation and likely causation\n"
    "4. Keep explanations concise and actionable";

inline constexpr const char* kJudgeSystemPrompt =
    "You are an expert evaluator assessing the quality of changepoint explanations. Your task is "
    "to determine whether a generated explanation correctly identifies the underlying event that "
    "caused a structural break in time series data.\n"
    "\n"
    "You will receive:\n"
    "1. The LLM's explanation of a detected changepoint\n"
    "2. The ground truth event that actually caused the changepoint\n"
    "\n"
    "Evaluate whether the explanation correctly identifies the core causal event. The explanation "
    "does not need to match the ground truth word-for-word, but must identify the same "
    "fundamental event or cause.\n"
    "\n"
    "Output only: CORRECT or INCORRECT";

inline constexpr const char* kEmptyRetrievalSentinel = "No relevant documents retrieved.";

inline ChatRequest render_standard_prompt(const BreakContext& ctx) {
    ChatRequest req;
    req.system = kStandardSystemPrompt;
    req.temperature = 0.3;
    req.max_tokens = 300;
    req.user = "Analyze this structural break in " + ctx.data_description +
               ":\n"
               "\n"
               "Break Details:\n"
               "- Date: " +
               ctx.break_date +
               "\n"
               "- Confidence: " +
               detail::fmt_pct1(ctx.confidence) +
               "\n"
               "- Magnitude: " +
               detail::fmt2(ctx.magnitude) + " (" + ctx.direction +
               " shift)\n"
               "\n"
               "Before Break (30-day window):\n"
               "- Mean: " +
               detail::fmt2(ctx.before.mean) +
               "\n"
               "- Std Dev: " +
               detail::fmt2(ctx.before.std) +
               "\n"
               "- Trend: " +
               ctx.before.trend +
               "\n"
               "\n"
               "After Break (30-day window):\n"
               "- Mean: " +
               detail::fmt2(ctx.after.mean) +
               "\n"
               "- Std Dev: " +
               detail::fmt2(ctx.after.std) +
               "\n"
               "- Trend: " +
               ctx.after.trend +
               "\n"
               "\n"
               "Provide a brief explanation of this structural break.";
    return req;
}

inline std::string render_document_context(const std::vector<RetrievedDoc>& docs) {
    if (docs.empty())
        return kEmptyRetrievalSentinel;
    std::string out;
    for (std::size_t i = 0; i < docs.size(); ++i) {
        if (i)
            out += "\n\n";
        out += "[" + std::to_string(i + 1) + "] " + docs[i].title + " (" + docs[i].date + ")\n" +
               docs[i].text;
    }
    return out;
}

inline ChatRequest render_rag_prompt(const BreakContext& ctx,
                                     const std::vector<RetrievedDoc>& docs) {
    ChatRequest req;
    req.system = kRagSystemPrompt;
    req.temperature = 0.3;
    req.max_tokens = 400;
    req.user = "Analyze this structural break with additional context:\n"
               "\n"
               "Break Information:\n"
               "- Date: " +
               ctx.break_date +
               "\n"
               "- Confidence: " +
               detail::fmt_plain(ctx.confidence) +
               "\n"
               "- Magnitude: " +
               detail::fmt_plain(ctx.magnitude) +
               "\n"
               "- Direction: " +
               ctx.direction +
               "\n"
               "\n"
               "Relevant Documents:\n" +
               render_document_context(docs) +
               "\n"
               "\n"
               "Explain this break using both the statistical evidence and document context. Be "
               "specific about how the documents relate to the observed change.";
    return req;
}

inline ChatRequest render_judge_prompt(const std::string& llm_explanation,
                                       const std::string& ground_truth_event) {
    ChatRequest req;
    req.system = kJudgeSystemPrompt;
    req.temperature = 0.0;
    req.max_tokens = 16;
    req.user = "Evaluate the following changepoint explanation:\n"
               "\n"
               "LLM Explanation:\n" +
               llm_explanation +
               "\n"
               "\n"
               "Ground Truth Event:\n" +
               ground_truth_event +
               "\n"
               "\n"
               "Does the explanation correctly identify the event that caused the changepoint?\n"
               "Output only: CORRECT or INCORRECT";
    return req;
}

} // namespace tsbreak
