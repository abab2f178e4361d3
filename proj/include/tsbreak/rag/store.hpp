#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#ifdef _WIN32
#include <io.h>
#else
#include <unistd.h>
#endif

#include "tsbreak/date.hpp"
#include "tsbreak/error.hpp"
#include "tsbreak/rag/chunk.hpp"
#include "tsbreak/rag/embed.hpp"

namespace tsbreak {

struct RagConfig {
    double alpha = 0.7;
    long delta_days = 30;
    std::size_t top_k = 3;
    std::string embedder = "lexical";

    void validate() const {
        if (!(alpha >= 0.0 && alpha <= 1.0))
            throw Error("rag: alpha must lie in [0, 1]");
        if (delta_days <= 0)
            throw Error("rag: delta_days must be positive");
        if (top_k < 1)
            throw Error("rag: top_k must be at least 1");
    }
};

struct RagStats {
    std::size_t total_documents = 0;
    std::size_t total_chunks = 0;
    std::size_t store_bytes = 0;
};

struct IngestReport {
    std::size_t added = 0;
    std::size_t skipped = 0;
    std::size_t replaced = 0;
    RagStats stats;
};

struct RankedChunk {
    std::string doc_id;
    std::size_t ordinal = 0;
    std::string title;
    Date date{};
    std::string text;
    double sim = 0.0;
    double temporal = 0.0;
    double score = 0.0;
};

inline double temporal_relevance(Date doc_date, Date t, long delta_days) {
    if (delta_days <= 0)
        throw Error("temporal_relevance: delta must be positive");
    double gap = static_cast<double>(std::labs(days_between(t, doc_date)));
    return std::max(0.0, 1.0 - gap / static_cast<double>(delta_days));
}

namespace detail {

inline void write_file_synced(const std::string& path, const std::string& bytes) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f)
        throw Error("cannot write '" + path + "'");
    if (!bytes.empty() && std::fwrite(bytes.data(), 1, bytes.size(), f) != bytes.size()) {
        std::fclose(f);
        throw Error("short write to '" + path + "'");
    }
    std::fflush(f);
#ifndef _WIN32
    ::fsync(::fileno(f));
#endif
    std::fclose(f);
}

} // namespace detail

// Persistent chunk store: manifest.jsonl (one document record per line),
// chunks.jsonl (one chunk per line, store order), vectors.bin (float32
// little-endian, kEmbedDim per chunk, same order).
class RagStore {
  public:
    explicit RagStore(std::string dir,
                      std::shared_ptr<Embedder> embedder = std::make_shared<LexicalEmbedder>())
        : dir_(std::move(dir)), embedder_(std::move(embedder)) {
        if (dir_.empty())
            throw Error("rag store directory must not be empty");
        std::filesystem::create_directories(dir_);
        load();
    }

    IngestReport add_documents(const std::vector<Document>& docs) {
        IngestReport report;
        for (const Document& doc : docs) {
            if (doc.id.empty())
                throw Error("document id must not be empty");
            std::string hash = std::to_string(detail::fnv1a64(doc.body));
            auto it = std::find_if(docs_.begin(), docs_.end(),
                                   [&](const DocMeta& m) { return m.id == doc.id; });
            if (it != docs_.end()) {
                if (it->hash == hash) {
                    ++report.skipped;
                    continue;
                }
                remove_doc_chunks(doc.id);
                docs_.erase(std::find_if(docs_.begin(), docs_.end(),
                                         [&](const DocMeta& m) { return m.id == doc.id; }));
                ++report.replaced;
            } else {
                ++report.added;
            }

            std::vector<std::string> texts = chunk_document(doc);
            std::vector<Embedding> vecs = embedder_->embed(texts);
            DocMeta meta;
            meta.id = doc.id;
            meta.title = doc.title;
            meta.date = doc.date;
            meta.doc_type = doc.doc_type;
            meta.chunk_count = texts.size();
            meta.hash = hash;
            meta.source = doc.source_path;
            docs_.push_back(meta);
            for (std::size_t i = 0; i < texts.size(); ++i) {
                chunks_.push_back({doc.id, i, texts[i]});
                vectors_.push_back(std::move(vecs[i]));
            }
        }
        persist();
        report.stats = stats();
        return report;
    }

    IngestReport add_paths(const std::vector<std::string>& paths) {
        std::vector<Document> docs;
        for (const std::string& p : paths) {
            std::filesystem::path fp(p);
            if (std::filesystem::is_directory(fp)) {
                std::vector<std::string> files;
                for (const auto& entry : std::filesystem::directory_iterator(fp))
                    if (entry.is_regular_file())
                        files.push_back(entry.path().string());
                std::sort(files.begin(), files.end());
                for (const std::string& f : files)
                    docs.push_back(parse_document_file(f));
            } else {
                docs.push_back(parse_document_file(p));
            }
        }
        return add_documents(docs);
    }

    std::size_t delete_by_date(Date start, Date end) {
        if (start > end)
            throw Error("delete_by_date: start must not exceed end");
        std::vector<std::string> doomed;
        for (const DocMeta& m : docs_)
            if (m.date >= start && m.date <= end)
                doomed.push_back(m.id);
        for (const std::string& id : doomed) {
            remove_doc_chunks(id);
            docs_.erase(std::find_if(docs_.begin(), docs_.end(),
                                     [&](const DocMeta& m) { return m.id == id; }));
        }
        persist();
        return doomed.size();
    }

    RagStats stats() const {
        RagStats s;
        s.total_documents = docs_.size();
        s.total_chunks = chunks_.size();
        for (const ChunkRec& c : chunks_)
            s.store_bytes += c.text.size() + kEmbedDim * sizeof(float);
        return s;
    }

    std::vector<RankedChunk> retrieve(const std::string& query, Date t,
                                      const RagConfig& cfg = {}) const {
        cfg.validate();
        std::vector<RankedChunk> out;
        if (chunks_.empty())
            return out;

        std::unordered_map<std::string, const DocMeta*> by_id;
        for (const DocMeta& m : docs_)
            by_id[m.id] = &m;

        std::vector<std::size_t> candidates;
        for (std::size_t i = 0; i < chunks_.size(); ++i) {
            const DocMeta* m = by_id.at(chunks_[i].doc_id);
            if (std::labs(days_between(t, m->date)) <= cfg.delta_days)
                candidates.push_back(i);
        }
        if (candidates.empty()) {
            std::cerr << "tsbreak: warning: no documents within " << cfg.delta_days
                      << " days of " << format_date(t) << "\n";
            return out;
        }

        Embedding q = embedder_->embed({query}).front();
        for (std::size_t i : candidates) {
            const DocMeta* m = by_id.at(chunks_[i].doc_id);
            RankedChunk rc;
            rc.doc_id = chunks_[i].doc_id;
            rc.ordinal = chunks_[i].ordinal;
            rc.title = m->title;
            rc.date = m->date;
            rc.text = chunks_[i].text;
            rc.sim = cosine_similarity(q, vectors_[i]);
            rc.temporal = temporal_relevance(m->date, t, cfg.delta_days);
            rc.score = cfg.alpha * rc.sim + (1.0 - cfg.alpha) * rc.temporal;
            out.push_back(std::move(rc));
        }
        std::sort(out.begin(), out.end(), [](const RankedChunk& a, const RankedChunk& b) {
            if (a.score != b.score)
                return a.score > b.score;
            if (a.date != b.date)
                return a.date < b.date;
            if (a.doc_id != b.doc_id)
                return a.doc_id < b.doc_id;
            return a.ordinal < b.ordinal;
        });
        if (out.size() > cfg.top_k)
            out.resize(cfg.top_k);
        return out;
    }

    const std::string& dir() const { return dir_; }

  private:
    struct DocMeta {
        std::string id;
        std::string title;
        Date date{};
        std::string doc_type;
        std::size_t chunk_count = 0;
        std::string hash;
        std::string source;
    };
    struct ChunkRec {
        std::string doc_id;
        std::size_t ordinal = 0;
        std::string text;
    };

    void remove_doc_chunks(const std::string& id) {
        for (std::size_t i = chunks_.size(); i-- > 0;) {
            if (chunks_[i].doc_id == id) {
                chunks_.erase(chunks_.begin() + static_cast<std::ptrdiff_t>(i));
                vectors_.erase(vectors_.begin() + static_cast<std::ptrdiff_t>(i));
            }
        }
    }

    std::string manifest_path() const { return dir_ + "/manifest.jsonl"; }
    std::string chunks_path() const { return dir_ + "/chunks.jsonl"; }
    std::string vectors_path() const { return dir_ + "/vectors.bin"; }

    void load() {
        docs_.clear();
        chunks_.clear();
        vectors_.clear();
        std::ifstream mf(manifest_path());
        if (!mf)
            return;
        std::string line;
        while (std::getline(mf, line)) {
            if (line.empty())
                continue;
            nlohmann::json j = nlohmann::json::parse(line);
            DocMeta m;
            m.id = j.at("id").get<std::string>();
            m.title = j.at("title").get<std::string>();
            m.date = parse_date(j.at("date").get<std::string>());
            m.doc_type = j.value("type", "document");
            m.chunk_count = j.at("chunks").get<std::size_t>();
            m.hash = j.at("hash").get<std::string>();
            m.source = j.value("source", "");
            docs_.push_back(std::move(m));
        }

        std::ifstream cf(chunks_path());
        while (cf && std::getline(cf, line)) {
            if (line.empty())
                continue;
            nlohmann::json j = nlohmann::json::parse(line);
            ChunkRec c;
            c.doc_id = j.at("doc").get<std::string>();
            c.ordinal = j.at("ord").get<std::size_t>();
            c.text = j.at("text").get<std::string>();
            chunks_.push_back(std::move(c));
        }

        std::ifstream vf(vectors_path(), std::ios::binary);
        if (vf) {
            for (std::size_t i = 0; i < chunks_.size(); ++i) {
                Embedding v(kEmbedDim);
                vf.read(reinterpret_cast<char*>(v.data()),
                        static_cast<std::streamsize>(kEmbedDim * sizeof(float)));
                if (!vf)
                    throw Error("vector file truncated in '" + dir_ + "'");
                vectors_.push_back(std::move(v));
            }
        }
        if (vectors_.size() != chunks_.size())
            throw Error("vector/chunk count mismatch in '" + dir_ + "'");
    }

    void persist() const {
        std::string manifest;
        for (const DocMeta& m : docs_) {
            nlohmann::json j = {{"id", m.id},       {"title", m.title},
                                {"date", format_date(m.date)}, {"type", m.doc_type},
                                {"chunks", m.chunk_count},     {"hash", m.hash},
                                {"source", m.source}};
            manifest += j.dump() + "\n";
        }
        std::string chunks;
        for (const ChunkRec& c : chunks_) {
            nlohmann::json j = {{"doc", c.doc_id}, {"ord", c.ordinal}, {"text", c.text}};
            chunks += j.dump() + "\n";
        }
        std::string vectors;
        vectors.reserve(vectors_.size() * kEmbedDim * sizeof(float));
        for (const Embedding& v : vectors_)
            vectors.append(reinterpret_cast<const char*>(v.data()), kEmbedDim * sizeof(float));

        detail::write_file_synced(manifest_path(), manifest);
        detail::write_file_synced(chunks_path(), chunks);
        detail::write_file_synced(vectors_path(), vectors);
    }

    std::string dir_;
    std::shared_ptr<Embedder> embedder_;
    std::vector<DocMeta> docs_;
    std::vector<ChunkRec> chunks_;
    std::vector<Embedding> vectors_;
};

} // namespace tsbreak
