#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clusart/corpus.hpp"

namespace clusart {

// Generator for the desk-scale test corpus: topics with pairwise disjoint
// word lists (also disjoint after stemming), documents written as short
// sentences mixing topic words, shared background words and stopwords.
struct SyntheticSpec {
  std::size_t topics = 4;
  std::size_t docs_per_topic = 50;
  std::size_t min_words = 400;
  std::size_t max_words = 400;
  std::size_t words_per_topic = 4;  // leading words of each topic list
  double zipf_exponent = 0.5;
  double stopword_rate = 0.3;
  // Share of words drawn from a small vocabulary common to all topics. Every
  // document contains every background word.
  double background_rate = 0.7;
  std::size_t background_words = 4;
  std::uint64_t seed = 2024;
};

struct SyntheticTopic {
  std::string_view label;
  std::span<const std::string_view> words;
};

// The built-in topics (at most this many can be requested).
std::span<const SyntheticTopic> synthetic_topics();

// Documents are labelled by topic, ids "<label>/<nnnn>", no split tags.
Corpus make_synthetic_corpus(const SyntheticSpec& spec = {});

// Writes one file per document under root/<label>/<name>, the layout that
// load_newsgroups_dir reads back.
void write_corpus_tree(const Corpus& corpus, const std::filesystem::path& root);

}  // namespace clusart
