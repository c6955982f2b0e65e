#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "clusart/huffman.hpp"
#include "clusart/textprep.hpp"

namespace clusart::pvec {

enum class Mode { kDm, kDbow };
enum class Combine { kAverage, kConcatenate };

std::string_view to_string(Mode mode);
std::string_view to_string(Combine combine);
Mode parse_mode(std::string_view text);
Combine parse_combine(std::string_view text);

struct Params {
  std::size_t para_dim = 50;  // p
  std::size_t word_dim = 50;  // q
  std::size_t window = 4;     // context half-width k
  double learning_rate = 0.025;
  double min_learning_rate = 1e-4;
  int epochs = 20;
  int infer_epochs = 20;
  Mode mode = Mode::kDm;
  Combine combine = Combine::kAverage;
  std::uint64_t seed = 1;
  std::size_t min_count = 2;

  void validate() const;

  // Width of the hidden vector h fed to the softmax.
  std::size_t hidden_dim() const;
};

// Row-major dense matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
  std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

struct Model {
  Params params;
  std::vector<std::string> words;   // embedding vocabulary, lexicographic
  std::vector<std::size_t> counts;  // training-corpus count per word
  HuffmanTree tree;
  std::vector<std::string> doc_ids;
  Matrix doc_vectors;               // D: N x p
  Matrix word_vectors;              // W: M' x q (empty under PV-DBOW)
  Matrix softmax_weights;           // U: (M'-1) x hidden_dim, one row per inner node
  std::vector<double> softmax_bias; // b: one per inner node
  std::vector<double> epoch_loss;   // mean loss per training epoch
  std::vector<bool> trained;        // per document: had >= 1 in-vocabulary token
  std::size_t skipped_documents = 0;

  std::ptrdiff_t word_index(const std::string& word) const;
  std::vector<std::size_t> encode(const std::vector<std::string>& tokens) const;
  // N*p + M'*q + (M'-1)*(hidden_dim + 1)
  std::size_t parameter_count() const;
  void rebuild_index();

 private:
  std::unordered_map<std::string, std::size_t> index_;
};

// One prediction problem: the target word and what h is built from.
// Under PV-DM with concatenation, `context` has exactly 2k slots and -1
// marks a position outside the document (zero vector). Under averaging it
// lists only the context words present. PV-DBOW uses no context.
struct Example {
  std::size_t doc = 0;
  std::vector<std::ptrdiff_t> context;
  std::size_t target = 0;
};

Example make_dm_example(std::span<const std::size_t> tokens, std::size_t doc, std::size_t position,
                        const Params& params);

// h for an example, built from D and W per the model's mode and combine rule.
std::vector<double> hidden(const Model& model, const Example& ex);
std::vector<double> hidden_with(const Model& model, const Example& ex, std::span<const double> doc_vector);

// -log p(target | h) under the hierarchical softmax.
double example_loss(const Model& model, const Example& ex);

struct ExampleGradient {
  double loss = 0.0;
  std::vector<double> doc;                                  // dL/dD[ex.doc]
  std::map<std::size_t, std::vector<double>> words;         // dL/dW[c]
  std::map<std::size_t, std::vector<double>> softmax_rows;  // dL/dU[n]
  std::map<std::size_t, double> softmax_bias;               // dL/db[n]
};

ExampleGradient example_gradient(const Model& model, const Example& ex);

// p(w | h) for every leaf; sums to one.
std::vector<double> leaf_probabilities(const Model& model, std::span<const double> h);

// Reference flat softmax over arbitrary logits.
std::vector<double> plain_softmax(std::span<const double> logits);

// Builds the embedding vocabulary (count >= min_count) and trains D, W, U, b
// by SGD. Deterministic for a fixed seed.
Model train(std::span<const TokenizedDoc> docs, const Params& params);

// Optimizes a fresh paragraph vector with W, U, b frozen. Throws
// InferenceError when the document has no in-vocabulary token.
std::vector<double> infer_vector(const Model& model, const TokenizedDoc& doc, int infer_epochs,
                                 std::uint64_t seed);

// Inference for many documents (OpenMP over documents). Element i is nullopt
// when document i has no in-vocabulary token. Seeds derive from `seed` and i.
std::vector<std::optional<std::vector<double>>> infer_batch(const Model& model,
                                                            std::span<const TokenizedDoc> docs,
                                                            int infer_epochs, std::uint64_t seed);

namespace reference {
std::vector<std::optional<std::vector<double>>> infer_batch(const Model& model,
                                                            std::span<const TokenizedDoc> docs,
                                                            int infer_epochs, std::uint64_t seed);
}  // namespace reference

double cosine(std::span<const double> a, std::span<const double> b);

struct ClusterSummary {
  std::size_t category = 0;
  std::vector<double> centroid;
  std::size_t member_count = 0;
};

// Mean trained paragraph vector of each cluster's members. `clusters[c]`
// lists document rows of `model.doc_vectors`. Clusters without a trained
// member are left out.
std::vector<ClusterSummary> summarize_clusters(const Model& model,
                                               const std::vector<std::vector<std::size_t>>& clusters);

struct Ranked {
  std::size_t category = 0;
  double similarity = 0.0;
};

// Cosine similarity to every centroid, highest first (ties by category).
std::vector<Ranked> rank_categories(std::span<const double> vector,
                                    std::span<const ClusterSummary> summaries);

std::vector<Ranked> classify(const Model& model, std::span<const ClusterSummary> summaries,
                             const TokenizedDoc& doc, std::uint64_t seed);

void save_model(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

}  // namespace clusart::pvec
