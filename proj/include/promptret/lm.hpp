#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace promptret {

enum class LmKind { http, mock_oracle, mock_copier };

LmKind lm_kind_from_string(const std::string& name);
std::string to_string(LmKind kind);

struct RetryPolicy {
    int max_attempts = 5;
    int backoff_base_ms = 100;
};

// Configuration for one language-model service: either a remote HTTP endpoint
// speaking the JSON protocol in docs/lm_protocol.md, or one of the two
// deterministic in-process mocks used for desk-scale runs.
struct LmEndpoint {
    LmKind kind = LmKind::mock_oracle;
    std::string base_url;  // required for kind == http
    double timeout_s = 30.0;
    int max_concurrency = 4;
    RetryPolicy retry;
    std::uint64_t seed = 0;
    int context_size = 2048;

    static LmEndpoint from_json(const nlohmann::json& obj);
    nlohmann::json to_json() const;

    void validate() const;  // throws ConfigError on violated invariants
};

// Structured fields carried alongside the rendered prefix so that mock
// endpoints can evaluate oracle scores. HTTP servers are free to ignore them.
struct ScoreMeta {
    std::string cand_utterance;
    std::string cand_target;
    std::string query_utterance;
    std::string query_target;
};

struct ScoreRequest {
    std::string prefix;
    std::string completion;
    std::optional<ScoreMeta> meta;
};

// Client for scoring, generation and token counting. Shareable across
// threads; score_batch never has more than max_concurrency requests in
// flight and matches responses to requests by position.
class LmClient {
public:
    explicit LmClient(LmEndpoint endpoint);

    // Sum of completion-token log-probabilities under the endpoint.
    // mock-oracle returns ln(1e-6 + F1(tokenize(cand_target),
    // tokenize(query_target))) over the request's meta fields.
    // Throws ConfigError on an empty completion, LmTransportError after
    // exhausted retries, LmError on a non-finite server value.
    double score(const ScoreRequest& request) const;
    double score(const std::string& prefix, const std::string& completion) const;

    std::vector<double> score_batch(const std::vector<ScoreRequest>& requests) const;

    // Greedy continuation of `prefix`, truncated at the first occurrence of
    // `stop`. mock-copier parses the prefix as rendered by the default
    // template (one "utterance<TAB>target" line per in-context example, the
    // trailing piece being the test utterance) and returns the target of the
    // example whose utterance has the highest token-F1 with the test
    // utterance, ties resolved towards the earliest example in the prompt.
    std::string generate(const std::string& prefix, int max_tokens,
                         const std::string& stop) const;

    std::size_t count_tokens(const std::string& text) const;

    const LmEndpoint& endpoint() const { return endpoint_; }

private:
    double score_once(const ScoreRequest& request) const;
    nlohmann::json http_post(const std::string& path, const nlohmann::json& body) const;

    LmEndpoint endpoint_;
};

constexpr double kMockOracleEpsilon = 1e-6;

}  // namespace promptret
