#include "clusart/config.hpp"

#include <cstdlib>
#include <fstream>

#include "clusart/error.hpp"

namespace clusart {

void RunConfig::validate() const {
  if (split == SplitMode::kRandom && !(split_ratio > 0.0 && split_ratio < 1.0)) {
    throw ParameterError("split ratio must lie in (0, 1)");
  }
  if (vocab_size < 1) throw ParameterError("vocabulary size n must be >= 1");
  if (knn_k < 1) throw ParameterError("knn k must be >= 1");
  art.validate();
  pv.validate();
}

void RunConfig::override_seeds(std::uint64_t seed) {
  split_seed = seed;
  pv.seed = seed;
  infer_seed = seed;
}

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  j["ingest"] = {{"input", c.input},
                 {"test_input", c.test_input},
                 {"strip_headers", c.strip_headers},
                 {"split", c.split == SplitMode::kPredefined ? "predefined" : "random"},
                 {"split_ratio", c.split_ratio},
                 {"split_seed", c.split_seed}};
  j["preprocess"] = {{"stoplist", c.stoplist}};
  j["vectorize"] = {{"n", c.vocab_size}};
  j["fuzzyart"] = {{"alpha", c.art.alpha},
                   {"beta", c.art.beta},
                   {"rho", c.art.rho},
                   {"fast_commit", c.art.fast_commit},
                   {"max_epochs", c.art.max_epochs},
                   {"input_mode", std::string(fuzzyart::to_string(c.art.input_mode))}};
  j["pvec"] = {{"para_dim", c.pv.para_dim},
               {"word_dim", c.pv.word_dim},
               {"window", c.pv.window},
               {"learning_rate", c.pv.learning_rate},
               {"min_learning_rate", c.pv.min_learning_rate},
               {"epochs", c.pv.epochs},
               {"infer_epochs", c.pv.infer_epochs},
               {"mode", std::string(pvec::to_string(c.pv.mode))},
               {"combine", std::string(pvec::to_string(c.pv.combine))},
               {"seed", c.pv.seed},
               {"min_count", c.pv.min_count},
               {"infer_seed", c.infer_seed}};
  j["evaluate"] = {{"knn_k", c.knn_k}, {"rho_grid", c.rho_grid}};
  j["runtime"] = {{"deterministic", c.deterministic}, {"threads", c.threads}};
  return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig c;
  try {
    if (j.contains("ingest")) {
      const auto& s = j["ingest"];
      c.input = s.value("input", c.input);
      c.test_input = s.value("test_input", c.test_input);
      c.strip_headers = s.value("strip_headers", c.strip_headers);
      const std::string split = s.value("split", std::string("random"));
      if (split == "predefined") {
        c.split = SplitMode::kPredefined;
      } else if (split == "random") {
        c.split = SplitMode::kRandom;
      } else {
        throw ParameterError("split must be predefined or random, got '" + split + "'");
      }
      c.split_ratio = s.value("split_ratio", c.split_ratio);
      c.split_seed = s.value("split_seed", c.split_seed);
    }
    if (j.contains("preprocess")) c.stoplist = j["preprocess"].value("stoplist", c.stoplist);
    if (j.contains("vectorize")) c.vocab_size = j["vectorize"].value("n", c.vocab_size);
    if (j.contains("fuzzyart")) {
      const auto& s = j["fuzzyart"];
      c.art.alpha = s.value("alpha", c.art.alpha);
      c.art.beta = s.value("beta", c.art.beta);
      c.art.rho = s.value("rho", c.art.rho);
      c.art.fast_commit = s.value("fast_commit", c.art.fast_commit);
      c.art.max_epochs = s.value("max_epochs", c.art.max_epochs);
      c.art.input_mode = fuzzyart::parse_input_mode(
          s.value("input_mode", std::string(fuzzyart::to_string(c.art.input_mode))));
    }
    if (j.contains("pvec")) {
      const auto& s = j["pvec"];
      c.pv.para_dim = s.value("para_dim", c.pv.para_dim);
      c.pv.word_dim = s.value("word_dim", c.pv.word_dim);
      c.pv.window = s.value("window", c.pv.window);
      c.pv.learning_rate = s.value("learning_rate", c.pv.learning_rate);
      c.pv.min_learning_rate = s.value("min_learning_rate", c.pv.min_learning_rate);
      c.pv.epochs = s.value("epochs", c.pv.epochs);
      c.pv.infer_epochs = s.value("infer_epochs", c.pv.infer_epochs);
      c.pv.mode = pvec::parse_mode(s.value("mode", std::string(pvec::to_string(c.pv.mode))));
      c.pv.combine = pvec::parse_combine(s.value("combine", std::string(pvec::to_string(c.pv.combine))));
      c.pv.seed = s.value("seed", c.pv.seed);
      c.pv.min_count = s.value("min_count", c.pv.min_count);
      c.infer_seed = s.value("infer_seed", c.infer_seed);
    }
    if (j.contains("evaluate")) {
      c.knn_k = j["evaluate"].value("knn_k", c.knn_k);
      c.rho_grid = j["evaluate"].value("rho_grid", c.rho_grid);
    }
    if (j.contains("runtime")) {
      c.deterministic = j["runtime"].value("deterministic", c.deterministic);
      c.threads = j["runtime"].value("threads", c.threads);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed run config: ") + e.what());
  }
  return c;
}

void save_config(const RunConfig& config, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << to_json(config).dump(2) << '\n';
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config '" + path.string() + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

std::optional<std::uint64_t> seed_from_environment() {
  const char* value = std::getenv("CLUSART_SEED");
  if (value == nullptr || *value == '\0') return std::nullopt;
  char* end = nullptr;
  const unsigned long long seed = std::strtoull(value, &end, 10);
  if (end == value || *end != '\0') {
    throw ParameterError(std::string("CLUSART_SEED must be a non-negative integer, got '") + value + "'");
  }
  return static_cast<std::uint64_t>(seed);
}

}  // namespace clusart
