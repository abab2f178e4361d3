#pragma once

#include <chrono>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <string>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "tsbreak/error.hpp"
#include "tsbreak/explain/prompts.hpp"

namespace tsbreak {

class ChatProvider {
  public:
    virtual ~ChatProvider() = default;
    // Must be safe to call from multiple threads.
    virtual ChatResponse complete(const ChatRequest& req) = 0;
};

// JSON chat-completion client configured from the environment:
// LLM_API_KEY, LLM_ENDPOINT (scheme://host[:port][/path]), LLM_DEPLOYMENT.
class HttpChatProvider : public ChatProvider {
  public:
    HttpChatProvider() {
        api_key_ = env_or("LLM_API_KEY", "");
        std::string endpoint = env_or("LLM_ENDPOINT", "");
        model_ = env_or("LLM_DEPLOYMENT", "");
        if (api_key_.empty())
            throw Error("LLM_API_KEY is not set");
        if (endpoint.empty())
            throw Error("LLM_ENDPOINT is not set");
        if (model_.empty())
            throw Error("LLM_DEPLOYMENT is not set");
        split_endpoint(endpoint);
    }

    HttpChatProvider(std::string base, std::string path, std::string api_key, std::string model)
        : base_(std::move(base)), path_(std::move(path)), api_key_(std::move(api_key)),
          model_(std::move(model)) {}

    ChatResponse complete(const ChatRequest& req) override {
        nlohmann::json body = {
            {"model", model_},
            {"messages",
             {{{"role", "system"}, {"content", req.system}},
              {{"role", "user"}, {"content", req.user}}}},
            {"temperature", req.temperature},
            {"max_tokens", req.max_tokens},
        };

        httplib::Client client(base_);
        client.set_connection_timeout(15);
        client.set_read_timeout(120);
        httplib::Headers headers = {{"Authorization", "Bearer " + api_key_},
                                    {"api-key", api_key_}};
        auto res = client.Post(path_, headers, body.dump(), "application/json");
        if (!res)
            throw Error("chat request failed: " + httplib::to_string(res.error()));
        if (res->status < 200 || res->status >= 300)
            throw Error("chat request returned HTTP " + std::to_string(res->status) + ": " +
                        res->body.substr(0, 200));

        nlohmann::json parsed;
        try {
            parsed = nlohmann::json::parse(res->body);
        } catch (const std::exception& e) {
            throw Error(std::string("chat response is not valid JSON: ") + e.what());
        }
        if (!parsed.contains("choices") || parsed["choices"].empty())
            throw Error("chat response has no choices");
        ChatResponse out;
        out.text = parsed["choices"][0].value("message", nlohmann::json::object())
                       .value("content", "");
        out.provider = base_;
        out.model = model_;
        return out;
    }

  private:
    static std::string env_or(const char* name, const char* fallback) {
        const char* v = std::getenv(name);
        return v ? v : fallback;
    }

    void split_endpoint(const std::string& endpoint) {
        auto scheme = endpoint.find("://");
        std::size_t host_start = scheme == std::string::npos ? 0 : scheme + 3;
        auto slash = endpoint.find('/', host_start);
        if (slash == std::string::npos) {
            base_ = endpoint;
            path_ = "/v1/chat/completions";
        } else {
            base_ = endpoint.substr(0, slash);
            path_ = endpoint.substr(slash);
        }
    }

    std::string base_;
    std::string path_;
    std::string api_key_;
    std::string model_;
};

// In-process provider for tests and offline runs. The handler receives the
// rendered request; call_count() reports how many completions were served.
class StubChatProvider : public ChatProvider {
  public:
    using Handler = std::function<ChatResponse(const ChatRequest&)>;

    explicit StubChatProvider(Handler handler) : handler_(std::move(handler)) {}

    // Default stub: deterministic echo that quotes the break date line.
    StubChatProvider()
        : handler_([](const ChatRequest& req) {
              ChatResponse r;
              r.provider = "stub";
              r.model = "echo";
              std::string marker = "- Date: ";
              auto pos = req.user.find(marker);
              if (pos != std::string::npos) {
                  auto end = req.user.find('\n', pos);
                  r.text = "[stub explanation] Break on " +
                           req.user.substr(pos + marker.size(),
                                           end - pos - marker.size()) +
                           "; see the statistical summary above.";
              } else {
                  r.text = "[stub explanation] " + req.user.substr(0, 80);
              }
              return r;
          }) {}

    ChatResponse complete(const ChatRequest& req) override {
        std::lock_guard<std::mutex> lock(mu_);
        ++calls_;
        return handler_(req);
    }

    int call_count() const {
        std::lock_guard<std::mutex> lock(mu_);
        return calls_;
    }

  private:
    Handler handler_;
    mutable std::mutex mu_;
    int calls_ = 0;
};

// Up to `attempts` tries with doubling delay; rethrows the last failure.
inline ChatResponse complete_with_retry(ChatProvider& provider, const ChatRequest& req,
                                        int attempts = 3,
                                        std::chrono::milliseconds base_delay =
                                            std::chrono::milliseconds(100)) {
    if (attempts < 1)
        throw Error("complete_with_retry: attempts must be positive");
    std::chrono::milliseconds delay = base_delay;
    for (int i = 0;; ++i) {
        try {
            ChatResponse res = provider.complete(req);
            if (res.text.empty())
                throw Error("empty completion");
            return res;
        } catch (const std::exception&) {
            if (i + 1 >= attempts)
                throw;
            std::this_thread::sleep_for(delay);
            delay *= 2;
        }
    }
}

} // namespace tsbreak
