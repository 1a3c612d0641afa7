#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace promptret {

// Shared token representation for BM25, token-F1 scoring and the encoder
// vocabulary.
using TokenSeq = std::vector<std::string>;

// Lowercases and splits on Unicode whitespace; within a run, a new token
// starts before every punctuation run, so punctuation stays glued to a
// directly following word ("zoey's" -> [zoey, 's]) and trailing punctuation
// forms its own token ("wife." -> [wife, .]). Meaning-representation symbols
// like "#1" or "(do" therefore tokenize the same way in every context.
// Lowercasing is applied to ASCII; other codepoints pass through unchanged.
TokenSeq tokenize(std::string_view text, bool drop_stopwords);

// The bundled English stopword list (lowercase, fixed order). The same list
// ships as data/stopwords_en.txt, one word per line.
const std::vector<std::string>& english_stopwords();

bool is_stopword(const std::string& token);

// Set-based F1 overlap between two token sequences (duplicates ignored).
// Returns 0 when either side is empty.
double token_set_f1(const TokenSeq& a, const TokenSeq& b);

// Number of whitespace-delimited chunks; the token counting rule used by the
// mock LM endpoints.
std::size_t whitespace_token_count(std::string_view text);

}  // namespace promptret
