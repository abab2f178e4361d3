#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tsbreak/auto_select.hpp"
#include "tsbreak/ensemble.hpp"
#include "tsbreak/eval/harness.hpp"
#include "tsbreak/explain/explain.hpp"

namespace tsbreak {

// Presentation-ready break row shared by every detection strategy.
struct ReportBreak {
    std::size_t index = 0;
    std::string date;
    double confidence = 0.0;
    double magnitude = 0.0;
    std::size_t votes = 0;
    std::vector<std::string> methods;
};

inline ReportBreak to_report_break(const TimeSeries& ts, const EnsembleBreak& b) {
    ReportBreak r;
    r.index = b.index;
    r.date = ts.label(b.index);
    r.confidence = b.confidence;
    r.magnitude = b.magnitude;
    r.votes = b.votes;
    for (Method m : b.methods)
        r.methods.emplace_back(method_id(m));
    return r;
}

inline ReportBreak to_report_break(const TimeSeries& ts, const Detection& d) {
    ReportBreak r;
    r.index = d.index;
    r.date = ts.label(d.index);
    r.confidence = d.confidence;
    std::size_t n = ts.size();
    std::size_t pre_lo = d.index >= 30 ? d.index - 30 : 0;
    std::size_t post_hi = std::min(n, d.index + 30);
    r.magnitude = detail::window_mean(ts.values, d.index, post_hi) -
                  detail::window_mean(ts.values, pre_lo, d.index);
    return r;
}

namespace detail {

inline std::string fmt(const char* spec, double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, x);
    return buf;
}

} // namespace detail

inline std::string render_breaks_markdown(const std::string& input, const std::string& method,
                                          const TimeSeries& ts,
                                          const std::vector<ReportBreak>& breaks,
                                          const Selection* selection = nullptr,
                                          const std::vector<ExplainedBreak>* explained = nullptr) {
    std::string md = "# Structural Break Detection Results\n\n";
    md += "- Input: " + input + "\n";
    md += "- Method: " + method + "\n";
    md += "- Observations: " + std::to_string(ts.size()) + "\n\n";
    md += "Breaks detected: " + std::to_string(breaks.size()) + "\n";

    for (std::size_t i = 0; i < breaks.size(); ++i) {
        const ReportBreak& b = breaks[i];
        md += "\nBreak " + std::to_string(i + 1) + ": " + b.date + "\n";
        md += "  Confidence: " + detail::fmt("%.1f", 100.0 * b.confidence) + "\n";
        md += "  Magnitude: " + detail::fmt("%.3f", b.magnitude) + "\n";
        if (!b.methods.empty()) {
            md += "  Votes: " + std::to_string(b.votes) + " (";
            for (std::size_t j = 0; j < b.methods.size(); ++j) {
                if (j)
                    md += ", ";
                md += b.methods[j];
            }
            md += ")\n";
        }
    }

    if (selection) {
        md += "\n## Selection scores\n\n";
        md += "| Method | f1 | f2 | f3 | f4 | f5 | f6 | f7 | Total |\n";
        md += "|---|---|---|---|---|---|---|---|---|\n";
        for (const MethodScore& s : selection->scores) {
            md += "| ";
            md += method_id(s.method);
            md += " |";
            for (double f : s.f)
                md += " " + detail::fmt("%.1f", f) + " |";
            md += " " + detail::fmt("%.1f", s.total) + " |\n";
        }
        md += "\nSelected method: ";
        md += method_id(selection->method);
        md += "\n";
    }

    if (explained) {
        for (std::size_t i = 0; i < explained->size(); ++i) {
            const ExplainedBreak& eb = (*explained)[i];
            md += "\n## Explanation for break " + std::to_string(i + 1) + " (" +
                  (eb.mode == ExplainMode::Rag ? "rag" : "standard") + ")\n\n";
            if (eb.mode == ExplainMode::Rag) {
                md += "(" + std::to_string(eb.retrieved_ids.size()) + " docs retrieved)\n\n";
                for (const std::string& id : eb.retrieved_ids)
                    md += "- " + id + "\n";
                if (!eb.retrieved_ids.empty())
                    md += "\n";
            }
            if (eb.ok)
                md += eb.explanation + "\n";
            else
                md += "Explanation failed: " + eb.error + "\n";
        }
    }
    return md;
}

// Minimal dependency-free line chart with dashed break markers.
inline std::string render_breaks_svg(const TimeSeries& ts,
                                     const std::vector<ReportBreak>& breaks) {
    const double width = 800, height = 400, ml = 60, mr = 20, mt = 20, mb = 40;
    const double pw = width - ml - mr, ph = height - mt - mb;
    std::size_t n = ts.size();
    double lo = *std::min_element(ts.values.begin(), ts.values.end());
    double hi = *std::max_element(ts.values.begin(), ts.values.end());
    if (hi - lo < 1e-12)
        hi = lo + 1.0;

    auto x_at = [&](std::size_t i) {
        return ml + (n > 1 ? pw * static_cast<double>(i) / static_cast<double>(n - 1) : pw / 2);
    };
    auto y_at = [&](double v) { return mt + ph * (1.0 - (v - lo) / (hi - lo)); };

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"400\" "
                      "viewBox=\"0 0 800 400\">\n";
    svg += "<rect width=\"800\" height=\"400\" fill=\"white\"/>\n";
    svg += "<line x1=\"" + detail::fmt("%.2f", ml) + "\" y1=\"" + detail::fmt("%.2f", mt) +
           "\" x2=\"" + detail::fmt("%.2f", ml) + "\" y2=\"" + detail::fmt("%.2f", mt + ph) +
           "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + detail::fmt("%.2f", ml) + "\" y1=\"" + detail::fmt("%.2f", mt + ph) +
           "\" x2=\"" + detail::fmt("%.2f", ml + pw) + "\" y2=\"" +
           detail::fmt("%.2f", mt + ph) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"8\" y=\"" + detail::fmt("%.2f", mt + 5) + "\" font-size=\"11\">" +
           detail::fmt("%.6g", hi) + "</text>\n";
    svg += "<text x=\"8\" y=\"" + detail::fmt("%.2f", mt + ph) + "\" font-size=\"11\">" +
           detail::fmt("%.6g", lo) + "</text>\n";
    svg += "<text x=\"" + detail::fmt("%.2f", ml) + "\" y=\"392\" font-size=\"11\">" +
           ts.label(0) + "</text>\n";
    svg += "<text x=\"" + detail::fmt("%.2f", ml + pw - 70) + "\" y=\"392\" font-size=\"11\">" +
           ts.label(n - 1) + "</text>\n";

    svg += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < n; ++i) {
        if (i)
            svg += " ";
        svg += detail::fmt("%.2f", x_at(i)) + "," + detail::fmt("%.2f", y_at(ts.values[i]));
    }
    svg += "\"/>\n";

    for (const ReportBreak& b : breaks) {
        double x = x_at(b.index);
        svg += "<line x1=\"" + detail::fmt("%.2f", x) + "\" y1=\"" + detail::fmt("%.2f", mt) +
               "\" x2=\"" + detail::fmt("%.2f", x) + "\" y2=\"" + detail::fmt("%.2f", mt + ph) +
               "\" stroke=\"red\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n";
        svg += "<text x=\"" + detail::fmt("%.2f", x + 3) + "\" y=\"" +
               detail::fmt("%.2f", mt + 12) + "\" font-size=\"11\" fill=\"red\">" + b.date +
               "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

inline std::string render_eval_markdown(const EvalResult& r) {
    std::string md = "# Detection Benchmark\n\n";
    md += "Strategy: " + r.strategy + "\n\n";
    md += "| Case | Predicted | TP | FP | FN | Error |\n";
    md += "|---|---|---|---|---|---|\n";
    for (const CaseOutcome& c : r.cases) {
        std::string preds;
        for (std::size_t i = 0; i < c.predicted.size(); ++i) {
            if (i)
                preds += " ";
            preds += std::to_string(c.predicted[i]);
        }
        if (c.failed)
            preds = "(failed: " + c.message + ")";
        else if (preds.empty())
            preds = "-";
        md += "| " + c.name + " | " + preds + " | " + std::to_string(c.match.tp) + " | " +
              std::to_string(c.match.fp) + " | " + std::to_string(c.match.fn) + " | " +
              (c.match.error ? detail::fmt("%.0f", *c.match.error) : std::string("-")) + " |\n";
    }
    md += "\n| Method | TP | FP | FN | Prec | Rec | F1 | MTE |\n";
    md += "|---|---|---|---|---|---|---|---|\n";
    md += "| " + r.strategy + " | " + std::to_string(r.tp) + " | " + std::to_string(r.fp) +
          " | " + std::to_string(r.fn) + " | " + detail::fmt("%.3f", r.precision) + " | " +
          detail::fmt("%.3f", r.recall) + " | " + detail::fmt("%.3f", r.f1) + " | " +
          detail::fmt("%.2f", r.mte) + " |\n";
    return md;
}

inline nlohmann::json detect_results_json(const std::string& input, const std::string& method,
                                          const TimeSeries& ts,
                                          const std::vector<ReportBreak>& breaks) {
    nlohmann::json out = {{"input", input},
                          {"method", method},
                          {"observations", ts.size()},
                          {"breaks", nlohmann::json::array()}};
    for (const ReportBreak& b : breaks)
        out["breaks"].push_back({{"index", b.index},
                                 {"date", b.date},
                                 {"confidence", b.confidence},
                                 {"magnitude", b.magnitude},
                                 {"votes", b.votes},
                                 {"methods", b.methods}});
    return out;
}

inline nlohmann::json eval_results_json(const EvalResult& r, int tol) {
    nlohmann::json out = {{"strategy", r.strategy},
                          {"tolerance", tol},
                          {"cases", nlohmann::json::array()},
                          {"totals",
                           {{"tp", r.tp},
                            {"fp", r.fp},
                            {"fn", r.fn},
                            {"precision", r.precision},
                            {"recall", r.recall},
                            {"f1", r.f1},
                            {"mte", r.mte}}}};
    for (const CaseOutcome& c : r.cases)
        out["cases"].push_back({{"name", c.name},
                                {"predicted", c.predicted},
                                {"tp", c.match.tp},
                                {"fp", c.match.fp},
                                {"fn", c.match.fn},
                                {"failed", c.failed}});
    return out;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write '" + path + "'");
    out << content;
    if (!out)
        throw Error("short write to '" + path + "'");
}

} // namespace tsbreak
