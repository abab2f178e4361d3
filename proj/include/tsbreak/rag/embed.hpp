#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "tsbreak/error.hpp"

namespace tsbreak {

inline constexpr std::size_t kEmbedDim = 384;
using Embedding = std::vector<float>;

namespace detail {

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::vector<std::string> alnum_tokens(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (unsigned char c : text) {
        if (std::isalnum(c)) {
            cur.push_back(static_cast<char>(std::tolower(c)));
        } else if (!cur.empty()) {
            out.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty())
        out.push_back(cur);
    return out;
}

inline std::size_t token_bucket(std::string_view token) {
    return static_cast<std::size_t>(fnv1a64(token) % kEmbedDim);
}

inline void l2_normalize(Embedding& v) {
    double norm = 0.0;
    for (float x : v)
        norm += static_cast<double>(x) * static_cast<double>(x);
    norm = std::sqrt(norm);
    if (norm < 1e-12)
        throw Error("cannot normalize a zero embedding");
    for (float& x : v)
        x = static_cast<float>(x / norm);
}

} // namespace detail

inline double cosine_similarity(const Embedding& a, const Embedding& b) {
    if (a.size() != b.size())
        throw Error("embedding dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += static_cast<double>(a[i]) * static_cast<double>(b[i]);
    return s;
}

class Embedder {
  public:
    virtual ~Embedder() = default;
    virtual std::vector<Embedding> embed(const std::vector<std::string>& texts) = 0;
    virtual std::string id() const = 0;
};

// Deterministic offline fallback: hashed bag-of-words into 384 buckets,
// L2-normalized so dot product equals cosine similarity.
class LexicalEmbedder : public Embedder {
  public:
    std::vector<Embedding> embed(const std::vector<std::string>& texts) override {
        std::vector<Embedding> out;
        out.reserve(texts.size());
        for (const std::string& text : texts) {
            Embedding v(kEmbedDim, 0.0f);
            std::vector<std::string> tokens = detail::alnum_tokens(text);
            if (tokens.empty())
                throw Error("cannot embed text without tokens");
            for (const std::string& tok : tokens)
                v[detail::token_bucket(tok)] += 1.0f;
            detail::l2_normalize(v);
            out.push_back(std::move(v));
        }
        return out;
    }

    std::string id() const override { return "lexical"; }
};

// JSON embeddings client; response vectors are re-normalized on return.
class HttpEmbedder : public Embedder {
  public:
    HttpEmbedder(std::string base, std::string path, std::string api_key, std::string model)
        : base_(std::move(base)), path_(std::move(path)), api_key_(std::move(api_key)),
          model_(std::move(model)) {}

    std::vector<Embedding> embed(const std::vector<std::string>& texts) override {
        nlohmann::json body = {{"model", model_}, {"input", texts}};
        std::string last_error;
        for (int attempt = 0; attempt < 3; ++attempt) {
            try {
                httplib::Client client(base_);
                client.set_connection_timeout(15);
                client.set_read_timeout(120);
                httplib::Headers headers = {{"Authorization", "Bearer " + api_key_},
                                            {"api-key", api_key_}};
                auto res = client.Post(path_, headers, body.dump(), "application/json");
                if (!res)
                    throw Error("embedding request failed: " + httplib::to_string(res.error()));
                if (res->status < 200 || res->status >= 300)
                    throw Error("embedding request returned HTTP " +
                                std::to_string(res->status));
                nlohmann::json parsed = nlohmann::json::parse(res->body);
                std::vector<Embedding> out;
                for (const auto& item : parsed.at("data")) {
                    Embedding v = item.at("embedding").get<Embedding>();
                    detail::l2_normalize(v);
                    out.push_back(std::move(v));
                }
                if (out.size() != texts.size())
                    throw Error("embedding count mismatch");
                return out;
            } catch (const std::exception& e) {
                last_error = e.what();
            }
        }
        throw Error("embedding provider failed after retries: " + last_error);
    }

    std::string id() const override { return "http:" + model_; }

  private:
    std::string base_;
    std::string path_;
    std::string api_key_;
    std::string model_;
};

} // namespace tsbreak
