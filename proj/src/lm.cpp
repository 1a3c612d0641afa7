#include "promptret/lm.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "promptret/errors.hpp"
#include "promptret/hash.hpp"
#include "promptret/rng.hpp"
#include "promptret/tokenize.hpp"

namespace promptret {

LmKind lm_kind_from_string(const std::string& name) {
    if (name == "http") return LmKind::http;
    if (name == "mock-oracle") return LmKind::mock_oracle;
    if (name == "mock-copier") return LmKind::mock_copier;
    throw ConfigError("unknown LM endpoint kind: " + name);
}

std::string to_string(LmKind kind) {
    switch (kind) {
        case LmKind::http: return "http";
        case LmKind::mock_oracle: return "mock-oracle";
        case LmKind::mock_copier: return "mock-copier";
    }
    return "?";
}

LmEndpoint LmEndpoint::from_json(const nlohmann::json& obj) {
    LmEndpoint ep;
    ep.kind = lm_kind_from_string(obj.value("kind", "mock-oracle"));
    ep.base_url = obj.value("base_url", "");
    ep.timeout_s = obj.value("timeout_s", 30.0);
    ep.max_concurrency = obj.value("max_concurrency", 4);
    ep.retry.max_attempts = obj.value("max_attempts", 5);
    ep.retry.backoff_base_ms = obj.value("backoff_base_ms", 100);
    ep.seed = obj.value("seed", std::uint64_t{0});
    ep.context_size = obj.value("context_size", 2048);
    ep.validate();
    return ep;
}

nlohmann::json LmEndpoint::to_json() const {
    return nlohmann::json{{"kind", to_string(kind)},
                          {"base_url", base_url},
                          {"timeout_s", timeout_s},
                          {"max_concurrency", max_concurrency},
                          {"max_attempts", retry.max_attempts},
                          {"backoff_base_ms", retry.backoff_base_ms},
                          {"seed", seed},
                          {"context_size", context_size}};
}

void LmEndpoint::validate() const {
    if (kind == LmKind::http && base_url.empty()) {
        throw ConfigError("http LM endpoint requires base_url");
    }
    if (max_concurrency < 1) {
        throw ConfigError("LM endpoint max_concurrency must be >= 1");
    }
    if (retry.max_attempts < 1) {
        throw ConfigError("LM endpoint max_attempts must be >= 1");
    }
}

LmClient::LmClient(LmEndpoint endpoint) : endpoint_(std::move(endpoint)) {
    endpoint_.validate();
}

namespace {

struct PromptParse {
    std::vector<std::pair<std::string, std::string>> examples;  // (utterance, target)
    std::string query_utterance;
};

// Inverse of the default render template "{x}\t{y}\n" / "{x}\t". Lines
// without a tab are skipped rather than rejected, so instruction-style
// prefixes degrade gracefully.
PromptParse parse_default_prompt(const std::string& prefix) {
    PromptParse parsed;
    std::size_t start = 0;
    while (start <= prefix.size()) {
        const std::size_t nl = prefix.find('\n', start);
        const bool last = nl == std::string::npos;
        std::string piece = prefix.substr(start, last ? std::string::npos : nl - start);
        if (last) {
            if (!piece.empty() && piece.back() == '\t') piece.pop_back();
            parsed.query_utterance = piece;
            break;
        }
        const std::size_t tab = piece.find('\t');
        if (tab != std::string::npos) {
            parsed.examples.emplace_back(piece.substr(0, tab), piece.substr(tab + 1));
        }
        start = nl + 1;
    }
    return parsed;
}

std::string truncate_at_stop(std::string text, const std::string& stop) {
    if (stop.empty()) return text;
    const std::size_t pos = text.find(stop);
    if (pos != std::string::npos) text.resize(pos);
    return text;
}

void backoff_sleep(const RetryPolicy& retry, int attempt, std::uint64_t seed) {
    thread_local Rng rng(derive_seed(seed, "retry-jitter"));
    const int base = retry.backoff_base_ms;
    std::int64_t delay = static_cast<std::int64_t>(base) << (attempt - 1);
    if (delay > 10'000) delay = 10'000;
    if (base > 0) delay += static_cast<std::int64_t>(bounded_uniform(rng, base));
    std::this_thread::sleep_for(std::chrono::milliseconds(delay));
}

}  // namespace

nlohmann::json LmClient::http_post(const std::string& path,
                                   const nlohmann::json& body) const {
    httplib::Client client(endpoint_.base_url);
    const auto timeout = std::chrono::milliseconds(
        static_cast<std::int64_t>(endpoint_.timeout_s * 1000.0));
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    httplib::Headers headers;
    if (const char* key = std::getenv("PROMPTRET_API_KEY")) {
        headers.emplace("Authorization", std::string("Bearer ") + key);
    }

    const std::string payload = body.dump();
    std::string last_error;
    for (int attempt = 1; attempt <= endpoint_.retry.max_attempts; ++attempt) {
        if (attempt > 1) backoff_sleep(endpoint_.retry, attempt - 1, endpoint_.seed);
        auto res = client.Post(path, headers, payload, "application/json");
        if (!res) {
            last_error = httplib::to_string(res.error());
            continue;
        }
        nlohmann::json parsed;
        const bool parse_ok = [&] {
            parsed = nlohmann::json::parse(res->body, nullptr, false);
            return !parsed.is_discarded();
        }();
        // A context overflow is a terminal answer from the server, not a
        // transient fault; never retried.
        if (res->status == 413 ||
            (parse_ok && parsed.contains("error") && parsed["error"] == "context_overflow")) {
            throw LmContextOverflowError("LM endpoint " + endpoint_.base_url + path +
                                         " reported context overflow");
        }
        if (res->status != 200) {
            last_error = "HTTP status " + std::to_string(res->status);
            continue;
        }
        if (!parse_ok) {
            last_error = "unparseable response body";
            continue;
        }
        return parsed;
    }
    throw LmTransportError("LM endpoint " + endpoint_.base_url + path + " failed after " +
                           std::to_string(endpoint_.retry.max_attempts) +
                           " attempts: " + last_error);
}

double LmClient::score_once(const ScoreRequest& request) const {
    if (request.completion.empty()) {
        throw ConfigError("score requires a non-empty completion");
    }
    switch (endpoint_.kind) {
        case LmKind::mock_oracle: {
            if (!request.meta) {
                throw LmError("mock-oracle scoring requires structured meta fields");
            }
            const double f1 = token_set_f1(tokenize(request.meta->cand_target, false),
                                           tokenize(request.meta->query_target, false));
            return std::log(kMockOracleEpsilon + f1);
        }
        case LmKind::mock_copier:
            throw LmError("mock-copier endpoints do not implement scoring");
        case LmKind::http: {
            nlohmann::json body{{"prefix", request.prefix},
                                {"completion", request.completion}};
            if (request.meta) {
                body["meta"] = {{"cand_utterance", request.meta->cand_utterance},
                                {"cand_target", request.meta->cand_target},
                                {"query_utterance", request.meta->query_utterance},
                                {"query_target", request.meta->query_target}};
            }
            const nlohmann::json res = http_post("/score", body);
            if (!res.contains("logprob") || !res["logprob"].is_number()) {
                throw LmError("LM /score response missing numeric logprob");
            }
            const double value = res["logprob"].get<double>();
            if (!std::isfinite(value)) {
                throw LmError("LM /score returned a non-finite logprob");
            }
            return value;
        }
    }
    throw LmError("unreachable LM kind");
}

double LmClient::score(const ScoreRequest& request) const { return score_once(request); }

double LmClient::score(const std::string& prefix, const std::string& completion) const {
    return score_once({prefix, completion, std::nullopt});
}

std::vector<double> LmClient::score_batch(const std::vector<ScoreRequest>& requests) const {
    if (requests.empty()) {
        throw ConfigError("score_batch requires a non-empty request list");
    }
    const std::size_t n = requests.size();
    std::vector<double> results(n, 0.0);
    std::vector<std::exception_ptr> failures(n);
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(endpoint_.max_concurrency), n);
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                results[i] = score_once(requests[i]);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
        for (auto& t : pool) t.join();
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!failures[i]) continue;
        const std::string where = "score_batch item " + std::to_string(i) + ": ";
        try {
            std::rethrow_exception(failures[i]);
        } catch (const LmContextOverflowError& e) {
            throw LmContextOverflowError(where + e.what());
        } catch (const LmTransportError& e) {
            throw LmTransportError(where + e.what());
        } catch (const std::exception& e) {
            throw LmError(where + e.what());
        }
    }
    return results;
}

std::string LmClient::generate(const std::string& prefix, int max_tokens,
                               const std::string& stop) const {
    if (max_tokens < 1) {
        throw ConfigError("generate requires max_tokens >= 1");
    }
    switch (endpoint_.kind) {
        case LmKind::mock_oracle:
            throw LmError("mock-oracle endpoints do not implement generation");
        case LmKind::mock_copier: {
            if (endpoint_.context_size > 0 &&
                whitespace_token_count(prefix) + static_cast<std::size_t>(max_tokens) >
                    static_cast<std::size_t>(endpoint_.context_size)) {
                throw LmContextOverflowError(
                    "mock-copier prompt exceeds context size of " +
                    std::to_string(endpoint_.context_size) + " tokens");
            }
            const PromptParse parsed = parse_default_prompt(prefix);
            const TokenSeq query_tokens = tokenize(parsed.query_utterance, false);
            std::string best_target;
            double best_f1 = -1.0;
            for (const auto& [utterance, target] : parsed.examples) {
                const double f1 = token_set_f1(tokenize(utterance, false), query_tokens);
                if (f1 > best_f1) {
                    best_f1 = f1;
                    best_target = target;
                }
            }
            return truncate_at_stop(std::move(best_target), stop);
        }
        case LmKind::http: {
            const nlohmann::json res =
                http_post("/generate", {{"prefix", prefix},
                                        {"max_tokens", max_tokens},
                                        {"stop", stop}});
            if (!res.contains("text") || !res["text"].is_string()) {
                throw LmError("LM /generate response missing text field");
            }
            return truncate_at_stop(res["text"].get<std::string>(), stop);
        }
    }
    throw LmError("unreachable LM kind");
}

std::size_t LmClient::count_tokens(const std::string& text) const {
    switch (endpoint_.kind) {
        case LmKind::mock_oracle:
        case LmKind::mock_copier:
            return whitespace_token_count(text);
        case LmKind::http: {
            const nlohmann::json res = http_post("/count_tokens", {{"text", text}});
            if (!res.contains("n") || !res["n"].is_number_unsigned()) {
                throw LmError("LM /count_tokens response missing numeric n");
            }
            return res["n"].get<std::size_t>();
        }
    }
    throw LmError("unreachable LM kind");
}

}  // namespace promptret
