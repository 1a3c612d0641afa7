#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "promptret/tokenize.hpp"

namespace promptret {

// One training/evaluation pair: natural-language utterance and its target
// sequence (a program or meaning representation).
struct Example {
    std::string id;
    std::string utterance;
    std::string target;
};

class Dataset {
public:
    Dataset() = default;
    Dataset(std::vector<Example> examples, std::string split_name);

    const std::vector<Example>& examples() const { return examples_; }
    const std::string& split_name() const { return split_name_; }
    std::size_t size() const { return examples_.size(); }
    bool empty() const { return examples_.empty(); }

    const Example& at(std::size_t ordinal) const { return examples_.at(ordinal); }

    // Ordinal lookup by example id; returns npos when absent.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t find(const std::string& id) const;
    bool contains(const std::string& id) const { return find(id) != npos; }

    // Lookup that throws ConfigError naming the id when absent.
    const Example& by_id(const std::string& id) const;

private:
    std::vector<Example> examples_;
    std::string split_name_;
    std::unordered_map<std::string, std::size_t> index_;
};

// Loads a JSONL dataset: one object per line with string fields "id",
// "utterance" and "target". "id" may be omitted and defaults to
// "<split>-<line#>" (1-based). Line order is preserved.
// Throws ConfigError with the offending line number on malformed input,
// and on duplicate or empty-after-trim fields.
Dataset load_jsonl(const std::string& path, const std::string& split_name);

// Writes a dataset back out in the same JSONL schema.
void save_jsonl(const Dataset& dataset, const std::string& path);

// Token ids for the encoder. Id 0 is reserved for unknown tokens; observed
// tokens get ids in first-occurrence order over
// tokenize(utterance) ++ tokenize(target), dataset order.
class Vocabulary {
public:
    static Vocabulary build(const Dataset& dataset);

    std::size_t size() const { return id_to_token_.size(); }
    int id_of(const std::string& token) const;
    const std::string& token_of(int id) const { return id_to_token_.at(id); }
    const std::vector<std::string>& tokens() const { return id_to_token_; }

    std::vector<int> encode(const TokenSeq& tokens) const;

    // Stable content hash, stored in encoder checkpoints to detect mismatched
    // dataset/checkpoint pairs.
    std::string fingerprint() const;

private:
    std::unordered_map<std::string, int> token_to_id_;
    std::vector<std::string> id_to_token_;
};

}  // namespace promptret
