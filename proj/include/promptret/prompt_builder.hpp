#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "promptret/corpus.hpp"
#include "promptret/lm.hpp"

namespace promptret {

// Serialization of examples into prompt text. The default renders one
// example per line, tab-separating utterance from target, and leaves the
// test utterance waiting after a tab for the LM to complete.
struct RenderTemplate {
    std::string example_format = "{x}\t{y}\n";
    std::string query_format = "{x}\t";
    std::string stop = "\n";

    void validate() const;  // example_format needs {x} and {y}; query_format needs {x}
    std::string render_example(const Example& example) const;
    std::string render_query(const std::string& utterance) const;

    static RenderTemplate from_json(const nlohmann::json& obj);
    nlohmann::json to_json() const;
};

// The ordered, budget-respecting prompt [e_L' ... e_1 ; x_test].
struct AssembledPrompt {
    std::vector<std::string> example_ids_in_prompt_order;  // lowest-ranked first
    std::string rendered_text;
    std::size_t used_tokens = 0;
    std::size_t budget = 0;           // C
    std::size_t reserved_output = 0;  // |y'|
    std::size_t n_examples = 0;       // L'
};

// Packs the longest ranked prefix whose rendered pieces fit the budget:
// L' is the largest value with
//   sum_i tokens(render(e_i)) + tokens(render_query(x_test)) + reserved <= budget,
// summing over the top-L' of `ranked` (never a non-prefix subset). The
// rendered text lists examples in reversed rank order and ends with the
// rendered query. Token accounting uses lm.count_tokens on each piece.
// Throws ConfigError when the query alone exceeds the budget.
AssembledPrompt assemble(const std::vector<const Example*>& ranked,
                         const std::string& x_test, const RenderTemplate& tmpl,
                         const LmClient& lm, std::size_t budget,
                         std::size_t reserved_output);

struct PromptStats {
    std::map<std::size_t, std::size_t> histogram;  // n_examples -> count
    double mean = 0.0;
};

// Distribution of L' over a run; errors on an empty list.
PromptStats prompt_count_stats(const std::vector<AssembledPrompt>& prompts);

// One audit line per prompt: {query_id, example_ids, n_examples, used_tokens}.
nlohmann::json prompt_audit_record(const std::string& query_id,
                                   const AssembledPrompt& prompt);

}  // namespace promptret
