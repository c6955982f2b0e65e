#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "clusart/fuzzyart.hpp"

namespace clusart::eval {

struct ClusterLabelMap {
  std::map<std::size_t, std::string> labels;  // category -> gold label
  double coverage = 0.0;                      // fraction of documents in mapped clusters
};

// Majority gold label per cluster, ties broken by the lexicographically
// smaller label. `categories[i]` and `gold[i]` describe the same document.
ClusterLabelMap map_clusters_majority(std::span<const std::size_t> categories,
                                      std::span<const std::string> gold);

struct LabelScores {
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  std::size_t support = 0;    // gold count
  std::size_t predicted = 0;  // predicted count
};

struct Report {
  std::map<std::string, LabelScores> per_label;  // labels present in gold
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f = 0.0;
  double micro_precision = 0.0;
  double micro_recall = 0.0;
  double micro_f = 0.0;
  // counts[gold][predicted]
  std::map<std::string, std::map<std::string, std::size_t>> confusion;
};

// 2PR / (P + R), defined as 0 when P + R = 0.
double f_measure(double precision, double recall);

Report prf(std::span<const std::string> predicted, std::span<const std::string> gold);

struct SweepRow {
  double rho = 0.0;
  std::size_t categories = 0;
};

// Trains one fresh model per vigilance value (OpenMP over the grid).
std::vector<SweepRow> vigilance_sweep(std::span<const DocVector> vectors,
                                      const fuzzyart::Params& params,
                                      std::span<const double> rho_grid);

namespace reference {
std::vector<SweepRow> vigilance_sweep(std::span<const DocVector> vectors,
                                      const fuzzyart::Params& params,
                                      std::span<const double> rho_grid);
}  // namespace reference

// Cosine k-nearest-neighbour vote. Ties between labels go to the smaller
// summed cosine distance (1 - similarity), then to the smaller label.
std::string knn_predict(std::span<const DocVector> train, std::span<const std::string> labels,
                        std::span<const double> query, std::size_t k);

std::vector<std::string> knn_predict_batch(std::span<const DocVector> train,
                                           std::span<const std::string> labels,
                                           std::span<const DocVector> queries, std::size_t k);

namespace reference {
std::vector<std::string> knn_predict_batch(std::span<const DocVector> train,
                                           std::span<const std::string> labels,
                                           std::span<const DocVector> queries, std::size_t k);
}  // namespace reference

// CSV rho,categories
void save_sweep(std::span<const SweepRow> rows, const std::filesystem::path& path);

nlohmann::json to_json(const Report& report);
nlohmann::json to_json(const ClusterLabelMap& map);

// Parses "start:stop:step"; stop is included when reached within 1e-9.
std::vector<double> parse_grid(const std::string& spec);

}  // namespace clusart::eval
