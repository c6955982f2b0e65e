#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "clusart/corpus.hpp"

namespace clusart {

using Stoplist = std::unordered_set<std::string>;

struct TokenizedDoc {
  std::string id;
  std::vector<std::string> tokens;

  friend bool operator==(const TokenizedDoc&, const TokenizedDoc&) = default;
};

// Splits on ASCII whitespace and punctuation (any byte that is not an ASCII
// letter or digit), lowercases, drops empty fragments.
std::vector<std::string> tokenize(std::string_view text);

std::vector<std::string> filter_stopwords(std::vector<std::string> tokens,
                                          const Stoplist& stoplist);

// Porter (1980) stemmer. Words of length <= 2 are returned unchanged.
std::string porter_stem(std::string_view word);

// tokenize -> filter_stopwords -> porter_stem. Tokens that are not purely
// alphabetic (digits, mixed) are kept as-is rather than stemmed.
TokenizedDoc preprocess_document(const Document& doc, const Stoplist& stoplist);

// Runs preprocess_document over every document of `corpus`, in parallel.
std::vector<TokenizedDoc> preprocess_corpus(const Corpus& corpus, const Stoplist& stoplist);

const Stoplist& default_stoplist();

// One term per line; blank lines and lines starting with '#' are ignored.
Stoplist parse_stoplist(std::string_view text);
Stoplist load_stoplist(const std::filesystem::path& path);

// JSON Lines: {"id": ..., "tokens": [...]}
void save_tokens(const std::vector<TokenizedDoc>& docs, const std::filesystem::path& path);
std::vector<TokenizedDoc> load_tokens(const std::filesystem::path& path);

}  // namespace clusart
