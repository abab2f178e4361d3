#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tsbreak/date.hpp"
#include "tsbreak/error.hpp"
#include "tsbreak/time_series.hpp"

namespace tsbreak {

struct Document {
    std::string id;
    std::string title;
    Date date{};
    std::string doc_type;
    std::string body;
    std::string source_path;
};

namespace detail {

inline std::vector<std::string> whitespace_tokens(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok)
        out.push_back(tok);
    return out;
}

inline std::string join(const std::vector<std::string>& tokens, std::size_t lo, std::size_t hi,
                        const char* sep) {
    std::string out;
    for (std::size_t i = lo; i < hi; ++i) {
        if (i > lo)
            out += sep;
        out += tokens[i];
    }
    return out;
}

} // namespace detail

// Paragraph-aligned greedy packing into at most max_tokens whitespace tokens
// per chunk; paragraphs that alone exceed the budget are split at token
// boundaries with `overlap` tokens carried between adjacent windows.
inline std::vector<std::string> chunk_text(const std::string& body, std::size_t max_tokens = 256,
                                           std::size_t overlap = 32) {
    if (max_tokens == 0 || overlap >= max_tokens)
        throw Error("chunk_text: require max_tokens > overlap >= 0");

    std::vector<std::string> paragraphs;
    std::string cur;
    std::istringstream in(body);
    std::string line;
    auto flush_para = [&] {
        if (!detail::whitespace_tokens(cur).empty())
            paragraphs.push_back(cur);
        cur.clear();
    };
    while (std::getline(in, line)) {
        bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
        if (blank) {
            flush_para();
        } else {
            if (!cur.empty())
                cur += "\n";
            cur += line;
        }
    }
    flush_para();
    if (paragraphs.empty())
        throw Error("chunk_text: document body has no tokens");

    std::vector<std::string> chunks;
    std::vector<std::string> pack;
    std::size_t pack_tokens = 0;
    auto flush_pack = [&] {
        if (!pack.empty()) {
            std::string text;
            for (std::size_t i = 0; i < pack.size(); ++i) {
                if (i)
                    text += "\n\n";
                text += pack[i];
            }
            chunks.push_back(text);
            pack.clear();
            pack_tokens = 0;
        }
    };

    for (const std::string& para : paragraphs) {
        std::vector<std::string> tokens = detail::whitespace_tokens(para);
        if (tokens.size() > max_tokens) {
            flush_pack();
            std::size_t step = max_tokens - overlap;
            for (std::size_t lo = 0;; lo += step) {
                std::size_t hi = std::min(tokens.size(), lo + max_tokens);
                chunks.push_back(detail::join(tokens, lo, hi, " "));
                if (hi == tokens.size())
                    break;
            }
        } else if (pack_tokens + tokens.size() <= max_tokens) {
            pack.push_back(para);
            pack_tokens += tokens.size();
        } else {
            flush_pack();
            pack.push_back(para);
            pack_tokens = tokens.size();
        }
    }
    flush_pack();
    return chunks;
}

inline std::vector<std::string> chunk_document(const Document& doc, std::size_t max_tokens = 256,
                                               std::size_t overlap = 32) {
    return chunk_text(doc.body, max_tokens, overlap);
}

namespace detail {

inline std::optional<Date> date_from_body(const std::string& body) {
    std::istringstream in(body);
    std::string line;
    while (std::getline(in, line)) {
        auto pos = line.find("Date:");
        if (pos == std::string::npos)
            continue;
        std::string rest = trim(line.substr(pos + 5));
        if (rest.size() >= 10)
            if (auto d = try_parse_date(rest.substr(0, 10)))
                return d;
    }
    return std::nullopt;
}

inline std::optional<Date> date_from_filename(const std::string& stem) {
    if (stem.size() < 10)
        return std::nullopt;
    return try_parse_date(stem.substr(stem.size() - 10));
}

} // namespace detail

// Load one document from disk. The calendar date comes from a front-matter
// "Date: YYYY-MM-DD" line or a _YYYY-MM-DD filename suffix; files with
// neither are rejected.
inline Document parse_document_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open document '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();

    Document doc;
    doc.body = buf.str();
    doc.source_path = path;
    std::string stem = std::filesystem::path(path).stem().string();
    doc.id = stem;

    auto date = detail::date_from_body(doc.body);
    if (!date)
        date = detail::date_from_filename(stem);
    if (!date)
        throw Error("document '" + path + "' has no parseable date (front-matter or filename)");
    doc.date = *date;

    std::istringstream body_in(doc.body);
    std::string line;
    std::string first_nonempty;
    while (std::getline(body_in, line)) {
        std::string t = detail::trim(line);
        if (t.empty())
            continue;
        if (first_nonempty.empty())
            first_nonempty = t;
        if (t.rfind("Subject:", 0) == 0) {
            doc.title = detail::trim(t.substr(8));
            break;
        }
        if (t.rfind("Title:", 0) == 0) {
            doc.title = detail::trim(t.substr(6));
            break;
        }
    }
    if (doc.title.empty())
        doc.title = first_nonempty.empty() ? stem : first_nonempty.substr(0, 80);

    auto underscore = stem.find('_');
    doc.doc_type = underscore == std::string::npos ? "document" : stem.substr(0, underscore);
    return doc;
}

} // namespace tsbreak
