#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "clusart/fuzzyart.hpp"
#include "clusart/pvec.hpp"

namespace clusart {

enum class SplitMode { kPredefined, kRandom };

// Every parameter of a pipeline run. Persisted as run_config.json; loading
// it back reproduces the same artifacts.
struct RunConfig {
  // ingest
  std::string input;       // corpus root (the train root when test_input is set)
  std::string test_input;  // optional; selects the predefined split
  bool strip_headers = false;
  SplitMode split = SplitMode::kRandom;
  double split_ratio = 0.8;
  std::uint64_t split_seed = 1;

  // preprocess; empty means the built-in stoplist
  std::string stoplist;

  // vectorize
  std::size_t vocab_size = 1000;

  fuzzyart::Params art;
  pvec::Params pv;
  std::uint64_t infer_seed = 7;

  // evaluate / sweep
  std::size_t knn_k = 5;
  std::string rho_grid = "0.1:0.9:0.1";

  bool deterministic = true;
  int threads = 0;  // 0 = OpenMP default; ignored when deterministic

  void validate() const;

  // Replaces every seed with `seed` (the CLUSART_SEED override).
  void override_seeds(std::uint64_t seed);
};

nlohmann::json to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);

void save_config(const RunConfig& config, const std::filesystem::path& path);
RunConfig load_config(const std::filesystem::path& path);

// Parses CLUSART_SEED if set; throws ParameterError on a malformed value.
std::optional<std::uint64_t> seed_from_environment();

}  // namespace clusart
