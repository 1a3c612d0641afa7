#include "promptret/corpus.hpp"

#include <fstream>

#include "json.hpp"
#include "promptret/errors.hpp"
#include "promptret/hash.hpp"

namespace promptret {

namespace {

bool blank_after_trim(const std::string& s) {
    for (unsigned char c : s) {
        if (!std::isspace(c)) return false;
    }
    return true;
}

}  // namespace

Dataset::Dataset(std::vector<Example> examples, std::string split_name)
    : examples_(std::move(examples)), split_name_(std::move(split_name)) {
    index_.reserve(examples_.size());
    for (std::size_t i = 0; i < examples_.size(); ++i) {
        auto [it, inserted] = index_.emplace(examples_[i].id, i);
        if (!inserted) {
            throw ConfigError("duplicate example id: " + examples_[i].id);
        }
    }
}

std::size_t Dataset::find(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? npos : it->second;
}

const Example& Dataset::by_id(const std::string& id) const {
    const std::size_t ordinal = find(id);
    if (ordinal == npos) {
        throw ConfigError("example id not found in split '" + split_name_ + "': " + id);
    }
    return examples_[ordinal];
}

Dataset load_jsonl(const std::string& path, const std::string& split_name) {
    std::ifstream in(path);
    if (!in) {
        throw MissingArtifactError("cannot open dataset file: " + path);
    }
    std::vector<Example> examples;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank_after_trim(line)) continue;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("line " + std::to_string(line_no) +
                              ": malformed JSON: " + e.what());
        }
        if (!obj.is_object()) {
            throw ConfigError("line " + std::to_string(line_no) + ": not a JSON object");
        }
        Example ex;
        for (const char* field : {"utterance", "target"}) {
            if (!obj.contains(field) || !obj[field].is_string()) {
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": missing field " + field);
            }
        }
        ex.utterance = obj["utterance"].get<std::string>();
        ex.target = obj["target"].get<std::string>();
        if (obj.contains("id")) {
            if (!obj["id"].is_string()) {
                throw ConfigError("line " + std::to_string(line_no) + ": id must be a string");
            }
            ex.id = obj["id"].get<std::string>();
        } else {
            ex.id = split_name + "-" + std::to_string(line_no);
        }
        if (blank_after_trim(ex.utterance)) {
            throw ConfigError("line " + std::to_string(line_no) + ": empty utterance");
        }
        if (blank_after_trim(ex.target)) {
            throw ConfigError("line " + std::to_string(line_no) + ": empty target");
        }
        examples.push_back(std::move(ex));
    }
    try {
        return Dataset(std::move(examples), split_name);
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

void save_jsonl(const Dataset& dataset, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot write dataset file: " + path);
    }
    for (const Example& ex : dataset.examples()) {
        nlohmann::json obj{{"id", ex.id}, {"utterance", ex.utterance}, {"target", ex.target}};
        out << obj.dump() << "\n";
    }
}

Vocabulary Vocabulary::build(const Dataset& dataset) {
    if (dataset.empty()) {
        throw ConfigError("cannot build a vocabulary from an empty dataset");
    }
    Vocabulary vocab;
    vocab.id_to_token_.push_back("<unk>");
    auto add = [&vocab](const TokenSeq& tokens) {
        for (const std::string& tok : tokens) {
            auto [it, inserted] =
                vocab.token_to_id_.emplace(tok, static_cast<int>(vocab.id_to_token_.size()));
            if (inserted) vocab.id_to_token_.push_back(tok);
        }
    };
    for (const Example& ex : dataset.examples()) {
        add(tokenize(ex.utterance, false));
        add(tokenize(ex.target, false));
    }
    return vocab;
}

int Vocabulary::id_of(const std::string& token) const {
    auto it = token_to_id_.find(token);
    return it == token_to_id_.end() ? 0 : it->second;
}

std::vector<int> Vocabulary::encode(const TokenSeq& tokens) const {
    std::vector<int> ids;
    ids.reserve(tokens.size());
    for (const std::string& tok : tokens) ids.push_back(id_of(tok));
    return ids;
}

std::string Vocabulary::fingerprint() const {
    std::uint64_t state = 0xcbf29ce484222325ull;
    for (const std::string& tok : id_to_token_) {
        state = fnv1a64(tok, state);
        state = fnv1a64(std::string_view("\n", 1), state);
    }
    return "fnv1a64:" + to_hex(state);
}

}  // namespace promptret
