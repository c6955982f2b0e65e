#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "clusart/textprep.hpp"

namespace clusart {

// Top-n stems by collection frequency over the training documents.
struct Vocabulary {
  std::vector<std::string> terms;
  std::vector<std::size_t> collection_freq;
  std::vector<std::size_t> doc_freq;
  std::size_t corpus_size = 0;
  std::size_t requested_size = 0;  // n as asked; terms.size() may be smaller

  std::size_t size() const { return terms.size(); }
  // Index of `term`, or -1.
  std::ptrdiff_t index_of(const std::string& term) const;

  void rebuild_index();

 private:
  std::unordered_map<std::string, std::size_t> index_;
};

struct DocVector {
  std::string doc_id;
  std::vector<double> values;
};

// Per-feature maxima of the raw training vectors.
struct ScalingRecord {
  std::vector<double> maxima;
};

// Terms sorted by descending collection frequency, ties lexicographic.
Vocabulary build_vocabulary(std::span<const TokenizedDoc> docs, std::size_t n);
Vocabulary build_vocabulary(std::span<const TokenizedDoc* const> docs, std::size_t n);

// Component k = count(term_k in doc) * ln(|D| / DF_k).
std::vector<double> tfidf_vector(const TokenizedDoc& doc, const Vocabulary& vocab);

// Raw TF-IDF rows for many documents (OpenMP over documents).
std::vector<std::vector<double>> tfidf_matrix(std::span<const TokenizedDoc* const> docs,
                                              const Vocabulary& vocab);

ScalingRecord fit_scaling(std::span<const std::vector<double>> raw_training);

// Divides by the stored maxima (zero max leaves the component at 0) and
// clamps into [0,1].
std::vector<double> apply_scaling(std::span<const double> raw, const ScalingRecord& scaling);

struct ScaledSplit {
  std::vector<DocVector> vectors;
  ScalingRecord scaling;
};

// Fits the scaling on `raw_training` and applies it to it.
ScaledSplit scale_to_unit_interval(std::span<const std::vector<double>> raw_training,
                                   std::span<const std::string> doc_ids);

namespace reference {

// Single-threaded versions of the kernels above, kept as test oracles and
// benchmark baselines.
std::vector<std::vector<double>> tfidf_matrix(std::span<const TokenizedDoc* const> docs,
                                              const Vocabulary& vocab);
Vocabulary build_vocabulary(std::span<const TokenizedDoc* const> docs, std::size_t n);

}  // namespace reference

// JSON: terms, collection_freq, doc_freq, corpus_size, scaling_maxima.
void save_vocabulary(const Vocabulary& vocab, const ScalingRecord& scaling,
                     const std::filesystem::path& path);
std::pair<Vocabulary, ScalingRecord> load_vocabulary(const std::filesystem::path& path);

// CSV with header doc_id,f0,...,f{n-1}; 17 significant digits.
void save_vectors_csv(std::span<const DocVector> vectors, std::size_t dim,
                      const std::filesystem::path& path);
std::vector<DocVector> load_vectors_csv(const std::filesystem::path& path);

}  // namespace clusart
