#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "clusart/config.hpp"
#include "clusart/corpus.hpp"
#include "clusart/eval.hpp"
#include "clusart/fuzzyart.hpp"
#include "clusart/pvec.hpp"
#include "clusart/textprep.hpp"
#include "clusart/vectorizer.hpp"

namespace clusart {

// File names of the artifacts each stage reads and writes in the work directory.
namespace artifact {
inline constexpr const char* kCorpus = "corpus.jsonl";
inline constexpr const char* kTokens = "tokens.jsonl";
inline constexpr const char* kVocabulary = "vocab.json";
inline constexpr const char* kVectors = "vectors.csv";
inline constexpr const char* kModel = "model.json";
inline constexpr const char* kAssignments = "assignments.csv";
inline constexpr const char* kPvModel = "pv_model.json";
inline constexpr const char* kTopics = "topics.csv";
inline constexpr const char* kReport = "report.json";
inline constexpr const char* kSweep = "sweep.csv";
inline constexpr const char* kRunConfig = "run_config.json";
}  // namespace artifact

struct Vectorized {
  Vocabulary vocabulary;
  ScalingRecord scaling;
  std::vector<DocVector> vectors;  // every document, corpus order
};

// Vocabulary, idf and scaling come from the training split only.
Vectorized vectorize(const Corpus& corpus, std::span<const TokenizedDoc> tokens, std::size_t n);

// One row of topics.csv.
struct TopicRow {
  std::string doc_id;
  std::size_t predicted_category = 0;
  double similarity = 0.0;
  std::optional<std::size_t> rank2_category;
  double rank2_similarity = 0.0;
  bool fallback = false;  // no in-vocabulary token: largest training cluster assigned
};

struct Classification {
  pvec::Model model;
  std::vector<pvec::ClusterSummary> summaries;
  std::vector<TopicRow> rows;
};

// Trains the paragraph-vector model on the training documents, summarizes
// each Fuzzy ART cluster by its centroid and ranks every test document.
// `train_categories[i]` is the cluster of `train_tokens[i]`.
Classification classify_test_documents(std::span<const TokenizedDoc> train_tokens,
                                       std::span<const std::size_t> train_categories,
                                       std::span<const TokenizedDoc> test_tokens,
                                       const pvec::Params& params, std::uint64_t infer_seed);

struct Evaluation {
  eval::ClusterLabelMap cluster_map;
  eval::Report clusart;
  eval::Report knn;
  std::size_t knn_k = 0;
  std::size_t fallback_rows = 0;
  std::size_t categories = 0;
};

nlohmann::json to_json(const Evaluation& evaluation);

// Everything from a split corpus to both reports, without touching disk.
struct PipelineResult {
  std::vector<TokenizedDoc> tokens;
  Vectorized vectorized;
  fuzzyart::TrainResult clustering;
  Classification classification;
  Evaluation evaluation;
};

PipelineResult run_in_memory(const Corpus& corpus, const RunConfig& config);

// File-backed stages; each reads earlier artifacts from `dir`.
void stage_ingest(const RunConfig& config, const std::filesystem::path& dir);
void stage_preprocess(const RunConfig& config, const std::filesystem::path& dir);
void stage_vectorize(const RunConfig& config, const std::filesystem::path& dir);
void stage_train(const RunConfig& config, const std::filesystem::path& dir);
void stage_classify(const RunConfig& config, const std::filesystem::path& dir);
void stage_evaluate(const RunConfig& config, const std::filesystem::path& dir);
void stage_sweep(const RunConfig& config, const std::filesystem::path& dir);

// ingest through evaluate.
void run_pipeline(const RunConfig& config, const std::filesystem::path& dir);

void save_topics(std::span<const TopicRow> rows, const std::filesystem::path& path);
std::vector<TopicRow> load_topics(const std::filesystem::path& path);

}  // namespace clusart
