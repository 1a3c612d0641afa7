#include "promptret/bm25.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "promptret/binio.hpp"
#include "promptret/errors.hpp"

namespace promptret {

namespace {
constexpr char kMagic[8] = {'P', 'R', 'B', 'M', '2', '5', '0', '1'};
}

Bm25Index Bm25Index::build(const Dataset& dataset, const std::string& field,
                           Bm25Params params) {
    if (dataset.empty()) {
        throw ConfigError("cannot build a BM25 index over an empty dataset");
    }
    if (field != "target" && field != "utterance") {
        throw ConfigError("unknown BM25 field: " + field + " (expected target|utterance)");
    }
    Bm25Index index;
    index.params_ = params;
    index.field_ = field;
    index.doc_ids_.reserve(dataset.size());
    index.doc_len_.reserve(dataset.size());
    std::uint64_t total_len = 0;
    for (std::uint32_t ordinal = 0; ordinal < dataset.size(); ++ordinal) {
        const Example& ex = dataset.at(ordinal);
        const TokenSeq tokens =
            tokenize(field == "target" ? ex.target : ex.utterance, false);
        index.doc_ids_.push_back(ex.id);
        index.doc_len_.push_back(static_cast<std::uint32_t>(tokens.size()));
        total_len += tokens.size();
        std::unordered_map<std::string, std::uint32_t> freqs;
        for (const std::string& tok : tokens) ++freqs[tok];
        for (const auto& [tok, tf] : freqs) {
            index.postings_[tok].push_back({ordinal, tf});
        }
    }
    // Postings were appended in ascending ordinal order already; keep the
    // invariant explicit.
    for (auto& [tok, plist] : index.postings_) {
        std::sort(plist.begin(), plist.end(),
                  [](const Posting& a, const Posting& b) { return a.ordinal < b.ordinal; });
    }
    index.avg_doc_len_ =
        static_cast<double>(total_len) / static_cast<double>(dataset.size());
    return index;
}

double Bm25Index::idf(const std::string& token) const {
    auto it = postings_.find(token);
    const double df = it == postings_.end() ? 0.0 : static_cast<double>(it->second.size());
    const double n = static_cast<double>(n_docs());
    return std::log((n - df + 0.5) / (df + 0.5) + 1.0);
}

std::vector<SparseHit> Bm25Index::retrieve(
    const TokenSeq& query, std::size_t top_l,
    const std::optional<std::string>& exclude_id) const {
    if (top_l == 0) {
        throw ConfigError("retrieve requires top_l >= 1");
    }
    std::unordered_map<std::uint32_t, double> scores;
    for (const std::string& tok : query) {
        auto it = postings_.find(tok);
        if (it == postings_.end()) continue;
        const double token_idf = idf(tok);
        for (const Posting& posting : it->second) {
            const double tf = static_cast<double>(posting.term_freq);
            const double len_norm =
                1.0 - params_.b + params_.b * doc_len_[posting.ordinal] / avg_doc_len_;
            scores[posting.ordinal] +=
                token_idf * tf * (params_.k1 + 1.0) / (tf + params_.k1 * len_norm);
        }
    }
    std::vector<std::pair<std::uint32_t, double>> ranked;
    ranked.reserve(scores.size());
    for (const auto& [ordinal, score] : scores) {
        if (score <= 0.0) continue;
        if (exclude_id && doc_ids_[ordinal] == *exclude_id) continue;
        ranked.emplace_back(ordinal, score);
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (ranked.size() > top_l) ranked.resize(top_l);
    std::vector<SparseHit> hits;
    hits.reserve(ranked.size());
    for (const auto& [ordinal, score] : ranked) {
        hits.push_back({doc_ids_[ordinal], score});
    }
    return hits;
}

void Bm25Index::save(const std::string& path) const {
    std::ofstream out = open_output(path);
    write_magic(out, kMagic);
    nlohmann::json header{{"format_version", 1},
                          {"field", field_},
                          {"k1", params_.k1},
                          {"b", params_.b},
                          {"n_docs", n_docs()},
                          {"n_terms", postings_.size()}};
    write_json_header(out, header);
    for (std::size_t i = 0; i < doc_ids_.size(); ++i) {
        write_string(out, doc_ids_[i]);
        write_u32(out, doc_len_[i]);
    }
    for (const auto& [tok, plist] : postings_) {
        write_string(out, tok);
        write_u32(out, static_cast<std::uint32_t>(plist.size()));
        for (const Posting& p : plist) {
            write_u32(out, p.ordinal);
            write_u32(out, p.term_freq);
        }
    }
    if (!out) throw ConfigError("failed while writing BM25 index: " + path);
}

Bm25Index Bm25Index::load(const std::string& path) {
    std::ifstream in = open_input(path);
    expect_magic(in, kMagic, path);
    const nlohmann::json header = read_json_header(in, path);
    Bm25Index index;
    index.field_ = header.at("field").get<std::string>();
    index.params_.k1 = header.at("k1").get<double>();
    index.params_.b = header.at("b").get<double>();
    const auto n_docs = header.at("n_docs").get<std::size_t>();
    const auto n_terms = header.at("n_terms").get<std::size_t>();
    index.doc_ids_.reserve(n_docs);
    index.doc_len_.reserve(n_docs);
    std::uint64_t total_len = 0;
    for (std::size_t i = 0; i < n_docs; ++i) {
        index.doc_ids_.push_back(read_string(in, path));
        index.doc_len_.push_back(read_u32(in, path));
        total_len += index.doc_len_.back();
    }
    index.avg_doc_len_ = static_cast<double>(total_len) / static_cast<double>(n_docs);
    for (std::size_t t = 0; t < n_terms; ++t) {
        std::string tok = read_string(in, path);
        const std::uint32_t n_postings = read_u32(in, path);
        std::vector<Posting> plist(n_postings);
        for (auto& p : plist) {
            p.ordinal = read_u32(in, path);
            p.term_freq = read_u32(in, path);
        }
        index.postings_.emplace(std::move(tok), std::move(plist));
    }
    return index;
}

}  // namespace promptret
