#include "promptret/tokenize.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

namespace promptret {

namespace {

// NLTK-style English stopword list, versioned here; data/stopwords_en.txt is
// generated from this array and a test keeps the two in sync.
const char* kStopwords[] = {
    "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you", "you're",
    "you've", "you'll", "you'd", "your", "yours", "yourself", "yourselves", "he",
    "him", "his", "himself", "she", "she's", "her", "hers", "herself", "it",
    "it's", "its", "itself", "they", "them", "their", "theirs", "themselves",
    "what", "which", "who", "whom", "this", "that", "that'll", "these", "those",
    "am", "is", "are", "was", "were", "be", "been", "being", "have", "has",
    "had", "having", "do", "does", "did", "doing", "a", "an", "the", "and",
    "but", "if", "or", "because", "as", "until", "while", "of", "at", "by",
    "for", "with", "about", "against", "between", "into", "through", "during",
    "before", "after", "above", "below", "to", "from", "up", "down", "in",
    "out", "on", "off", "over", "under", "again", "further", "then", "once",
    "here", "there", "when", "where", "why", "how", "all", "any", "both",
    "each", "few", "more", "most", "other", "some", "such", "no", "nor", "not",
    "only", "own", "same", "so", "than", "too", "very", "s", "t", "can",
    "will", "just", "don", "don't", "should", "should've", "now", "d", "ll",
    "m", "o", "re", "ve", "y", "ain", "aren", "aren't", "couldn", "couldn't",
    "didn", "didn't", "doesn", "doesn't", "hadn", "hadn't", "hasn", "hasn't",
    "haven", "haven't", "isn", "isn't", "ma", "mightn", "mightn't", "mustn",
    "mustn't", "needn", "needn't", "shan", "shan't", "shouldn", "shouldn't",
    "wasn", "wasn't", "weren", "weren't", "won", "won't", "wouldn", "wouldn't",
};

const std::unordered_set<std::string>& stopword_set() {
    static const std::unordered_set<std::string> set(std::begin(kStopwords),
                                                     std::end(kStopwords));
    return set;
}

struct Codepoint {
    char32_t value;
    std::size_t length;  // bytes consumed
};

Codepoint decode_utf8(std::string_view text, std::size_t pos) {
    const unsigned char lead = static_cast<unsigned char>(text[pos]);
    std::size_t len = 1;
    char32_t cp = lead;
    if (lead >= 0xf0) {
        len = 4;
        cp = lead & 0x07;
    } else if (lead >= 0xe0) {
        len = 3;
        cp = lead & 0x0f;
    } else if (lead >= 0xc0) {
        len = 2;
        cp = lead & 0x1f;
    }
    if (pos + len > text.size()) {  // truncated sequence: treat lead byte alone
        return {lead, 1};
    }
    for (std::size_t i = 1; i < len; ++i) {
        const unsigned char cont = static_cast<unsigned char>(text[pos + i]);
        if ((cont & 0xc0) != 0x80) return {lead, 1};
        cp = (cp << 6) | (cont & 0x3f);
    }
    return {cp, len};
}

bool is_space_cp(char32_t cp) {
    switch (cp) {
        case U'\t': case U'\n': case U'\v': case U'\f': case U'\r': case U' ':
        case 0x85: case 0xa0: case 0x1680: case 0x2028: case 0x2029:
        case 0x202f: case 0x205f: case 0x3000:
            return true;
        default:
            return (cp >= 0x2000 && cp <= 0x200a);
    }
}

bool is_punct_cp(char32_t cp) {
    if (cp < 0x80) {
        return std::ispunct(static_cast<int>(cp)) != 0;
    }
    // General punctuation block (dashes, quotes, ellipsis) minus the spaces
    // handled above; enough for the corpora this engine targets.
    return (cp >= 0x2010 && cp <= 0x2027) || (cp >= 0x2030 && cp <= 0x205e);
}

void append_lowered(std::string& out, std::string_view text, std::size_t pos,
                    const Codepoint& cp) {
    if (cp.value < 0x80) {
        out.push_back(static_cast<char>(
            std::tolower(static_cast<unsigned char>(text[pos]))));
    } else {
        out.append(text.substr(pos, cp.length));
    }
}

}  // namespace

TokenSeq tokenize(std::string_view text, bool drop_stopwords) {
    TokenSeq tokens;
    std::string current;
    bool prev_was_word = false;
    auto flush = [&] {
        if (!current.empty()) {
            if (!drop_stopwords || !is_stopword(current)) tokens.push_back(current);
            current.clear();
        }
    };
    std::size_t pos = 0;
    while (pos < text.size()) {
        const Codepoint cp = decode_utf8(text, pos);
        if (is_space_cp(cp.value)) {
            flush();
            prev_was_word = false;
        } else if (is_punct_cp(cp.value)) {
            if (prev_was_word) flush();
            append_lowered(current, text, pos, cp);
            prev_was_word = false;
        } else {
            append_lowered(current, text, pos, cp);
            prev_was_word = true;
        }
        pos += cp.length;
    }
    flush();
    return tokens;
}

const std::vector<std::string>& english_stopwords() {
    static const std::vector<std::string> words(std::begin(kStopwords),
                                                std::end(kStopwords));
    return words;
}

bool is_stopword(const std::string& token) {
    return stopword_set().count(token) > 0;
}

double token_set_f1(const TokenSeq& a, const TokenSeq& b) {
    const std::unordered_set<std::string> sa(a.begin(), a.end());
    const std::unordered_set<std::string> sb(b.begin(), b.end());
    if (sa.empty() || sb.empty()) return 0.0;
    std::size_t common = 0;
    for (const auto& tok : sa) common += sb.count(tok);
    if (common == 0) return 0.0;
    const double precision = static_cast<double>(common) / static_cast<double>(sa.size());
    const double recall = static_cast<double>(common) / static_cast<double>(sb.size());
    return 2.0 * precision * recall / (precision + recall);
}

std::size_t whitespace_token_count(std::string_view text) {
    std::size_t count = 0;
    bool in_token = false;
    for (unsigned char c : text) {
        if (std::isspace(c)) {
            in_token = false;
        } else if (!in_token) {
            in_token = true;
            ++count;
        }
    }
    return count;
}

}  // namespace promptret
