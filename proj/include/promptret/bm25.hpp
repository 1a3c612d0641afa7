#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "promptret/corpus.hpp"
#include "promptret/tokenize.hpp"

namespace promptret {

struct SparseHit {
    std::string example_id;
    double score = 0.0;
};

struct Bm25Params {
    double k1 = 1.2;
    double b = 0.75;
};

// Okapi BM25 inverted index over one field of a dataset. Immutable after
// build; concurrent retrieval is safe.
//
//   score(q, d) = sum over t in q of
//       idf(t) * tf * (k1 + 1) / (tf + k1 * (1 - b + b * len_d / avg_len))
//   idf(t)     = ln((N - df + 0.5) / (df + 0.5) + 1)
//
// Query tokens are summed with multiplicity. The +1 inside the log keeps idf
// (and hence every matched document's score) strictly positive.
class Bm25Index {
public:
    struct Posting {
        std::uint32_t ordinal;
        std::uint32_t term_freq;
    };

    // Indexes tokenize(example.<field>, drop_stopwords=false) of every
    // example. field is "target" or "utterance". Throws ConfigError on an
    // empty dataset or unknown field.
    static Bm25Index build(const Dataset& dataset, const std::string& field,
                           Bm25Params params = {});

    // Top `top_l` documents by BM25 score, descending; ties broken by
    // ascending document ordinal. Documents scoring 0 (no query term present)
    // are omitted, as is `exclude_id` when given. Empty query -> empty list.
    std::vector<SparseHit> retrieve(const TokenSeq& query, std::size_t top_l,
                                    const std::optional<std::string>& exclude_id = {}) const;

    double idf(const std::string& token) const;

    std::size_t n_docs() const { return doc_len_.size(); }
    double avg_doc_len() const { return avg_doc_len_; }
    const std::string& field() const { return field_; }
    const Bm25Params& params() const { return params_; }
    const std::vector<std::string>& doc_ids() const { return doc_ids_; }
    const std::map<std::string, std::vector<Posting>>& postings() const { return postings_; }
    const std::vector<std::uint32_t>& doc_len() const { return doc_len_; }

    void save(const std::string& path) const;
    static Bm25Index load(const std::string& path);

private:
    // Postings keyed by token in a sorted map so serialization and iteration
    // order are deterministic.
    std::map<std::string, std::vector<Posting>> postings_;
    std::vector<std::uint32_t> doc_len_;
    std::vector<std::string> doc_ids_;
    double avg_doc_len_ = 0.0;
    Bm25Params params_;
    std::string field_;
};

}  // namespace promptret
