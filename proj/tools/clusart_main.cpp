#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "clusart/config.hpp"
#include "clusart/error.hpp"
#include "clusart/parallel.hpp"
#include "clusart/pipeline.hpp"
#include "clusart/synthetic.hpp"

namespace fs = std::filesystem;
using namespace clusart;

namespace {

// Thrown for problems that are the caller's fault: exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string config_path_from_argv(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) return argv[i + 1];
    if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
  }
  return {};
}

void add_runtime_flags(CLI::App* cmd, RunConfig& cfg, std::string& out, std::string& config_file) {
  cmd->add_option("-o,--out", out, "Work directory for artifacts")->capture_default_str();
  cmd->add_option("--config", config_file, "Load parameters from a run_config.json");
  cmd->add_flag("--deterministic,!--no-deterministic", cfg.deterministic,
                "Single-threaded execution (default on)");
  cmd->add_option("--threads", cfg.threads, "OpenMP threads when not deterministic (0 = all)")
      ->check(CLI::NonNegativeNumber);
}

void add_ingest_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("-i,--input", cfg.input, "Corpus root: one subdirectory per topic");
  cmd->add_option("--test-input", cfg.test_input, "Separate test root (selects the predefined split)");
  cmd->add_flag("--strip-headers,!--keep-headers", cfg.strip_headers,
                "Drop message headers up to the first blank line");
  cmd->add_option("--split", cfg.split, "random or predefined")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, SplitMode>{{"random", SplitMode::kRandom}, {"predefined", SplitMode::kPredefined}}));
  cmd->add_option("--split-ratio", cfg.split_ratio, "Training fraction for the random split");
  cmd->add_option("--split-seed", cfg.split_seed, "Seed of the random split");
}

void add_preprocess_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--stoplist", cfg.stoplist, "Stoplist file, one word per line (default: built-in)");
}

void add_vectorize_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("-n,--vocab-size", cfg.vocab_size, "Number of vocabulary terms")
      ->check(CLI::PositiveNumber);
}

void add_art_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--alpha", cfg.art.alpha, "Choice parameter (> 0)");
  cmd->add_option("--beta", cfg.art.beta, "Learning rate")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--rho", cfg.art.rho, "Vigilance")->check(CLI::Range(0.0, 1.0));
  cmd->add_flag("--fast-commit,!--no-fast-commit", cfg.art.fast_commit, "beta = 1 on first commitment");
  cmd->add_option("--max-epochs", cfg.art.max_epochs, "Epoch cap for Fuzzy ART training");
  cmd->add_option_function<std::string>(
         "--input-mode", [&cfg](const std::string& v) { cfg.art.input_mode = fuzzyart::parse_input_mode(v); },
         "complement_coding or l1_normalization")
      ->check(CLI::IsMember({"complement_coding", "l1_normalization"}));
}

void add_pv_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option_function<std::string>(
         "--pv-mode", [&cfg](const std::string& v) { cfg.pv.mode = pvec::parse_mode(v); }, "dm or dbow")
      ->check(CLI::IsMember({"dm", "dbow", "pv_dm", "pv_dbow"}));
  cmd->add_option_function<std::string>(
         "--combine", [&cfg](const std::string& v) { cfg.pv.combine = pvec::parse_combine(v); },
         "average or concatenate")
      ->check(CLI::IsMember({"average", "concatenate"}));
  cmd->add_option("--para-dim", cfg.pv.para_dim, "Paragraph vector size p");
  cmd->add_option("--word-dim", cfg.pv.word_dim, "Word vector size q");
  cmd->add_option("--window", cfg.pv.window, "Context half-width k");
  cmd->add_option("--learning-rate", cfg.pv.learning_rate, "Initial SGD step");
  cmd->add_option("--min-learning-rate", cfg.pv.min_learning_rate, "Final SGD step");
  cmd->add_option("--pv-epochs", cfg.pv.epochs, "Training epochs");
  cmd->add_option("--infer-epochs", cfg.pv.infer_epochs, "Inference epochs per test document");
  cmd->add_option("--min-count", cfg.pv.min_count, "Minimum count for the embedding vocabulary");
  cmd->add_option("--pv-seed", cfg.pv.seed, "Seed for training");
  cmd->add_option("--infer-seed", cfg.infer_seed, "Seed for inference");
}

void add_eval_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--knn-k", cfg.knn_k, "Neighbours for the kNN baseline");
}

void add_sweep_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--rho-grid", cfg.rho_grid, "Vigilance grid start:stop:step");
}

void require_file(const fs::path& path, const char* what) {
  if (!fs::exists(path)) throw UsageError(std::string(what) + " not found: " + path.string());
}

void require_artifacts(const fs::path& dir, std::initializer_list<const char*> names) {
  for (const char* name : names) {
    if (!fs::exists(dir / name)) {
      throw UsageError("missing " + (dir / name).string() + " (run the earlier stages first)");
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topic detection with Fuzzy ART clustering and a paragraph-vector classifier", "clusart"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string out = "clusart_run";
  std::string config_file;
  bool with_sweep = false;
  SyntheticSpec synth;
  std::string synth_root = "synthetic";

  const std::string preload = config_path_from_argv(argc, argv);
  if (!preload.empty()) {
    try {
      cfg = load_config(preload);
    } catch (const std::exception& e) {
      std::cerr << "clusart: error: " << e.what() << '\n';
      return 2;
    }
  }

  struct Command {
    CLI::App* app;
    std::function<void()> run;
  };
  std::vector<Command> commands;
  auto make = [&](const char* name, const char* help) {
    auto* cmd = app.add_subcommand(name, help);
    add_runtime_flags(cmd, cfg, out, config_file);
    return cmd;
  };
  const auto dir = [&] { return fs::path(out); };

  auto* ingest = make("ingest", "Load a corpus tree, split it, write corpus.jsonl");
  add_ingest_flags(ingest, cfg);
  commands.push_back({ingest, [&] {
                        if (cfg.input.empty()) throw UsageError("ingest needs --input");
                        require_file(cfg.input, "input directory");
                        if (!cfg.test_input.empty()) require_file(cfg.test_input, "test directory");
                        stage_ingest(cfg, dir());
                      }});

  auto* preprocess = make("preprocess", "Tokenize, filter stopwords and stem");
  add_preprocess_flags(preprocess, cfg);
  commands.push_back({preprocess, [&] {
                        require_artifacts(dir(), {artifact::kCorpus});
                        stage_preprocess(cfg, dir());
                      }});

  auto* vectorize_cmd = make("vectorize", "Build the vocabulary and scaled TF-IDF vectors");
  add_vectorize_flags(vectorize_cmd, cfg);
  commands.push_back({vectorize_cmd, [&] {
                        require_artifacts(dir(), {artifact::kCorpus, artifact::kTokens});
                        stage_vectorize(cfg, dir());
                      }});

  auto* train = make("train", "Cluster the training vectors with Fuzzy ART");
  add_art_flags(train, cfg);
  commands.push_back({train, [&] {
                        require_artifacts(dir(), {artifact::kCorpus, artifact::kVectors});
                        stage_train(cfg, dir());
                      }});

  auto* classify = make("classify", "Train paragraph vectors and classify the test documents");
  add_pv_flags(classify, cfg);
  commands.push_back({classify, [&] {
                        require_artifacts(dir(), {artifact::kCorpus, artifact::kTokens, artifact::kAssignments});
                        stage_classify(cfg, dir());
                      }});

  auto* evaluate = make("evaluate", "Score the classification and the kNN baseline");
  add_eval_flags(evaluate, cfg);
  commands.push_back({evaluate, [&] {
                        require_artifacts(dir(), {artifact::kCorpus, artifact::kVectors, artifact::kAssignments,
                                                  artifact::kModel, artifact::kTopics});
                        stage_evaluate(cfg, dir());
                      }});

  auto* sweep = make("sweep", "Count Fuzzy ART categories over a vigilance grid");
  add_art_flags(sweep, cfg);
  add_sweep_flags(sweep, cfg);
  commands.push_back({sweep, [&] {
                        require_artifacts(dir(), {artifact::kCorpus, artifact::kVectors});
                        stage_sweep(cfg, dir());
                      }});

  auto* pipeline = make("pipeline", "Run ingest through evaluate");
  add_ingest_flags(pipeline, cfg);
  add_preprocess_flags(pipeline, cfg);
  add_vectorize_flags(pipeline, cfg);
  add_art_flags(pipeline, cfg);
  add_pv_flags(pipeline, cfg);
  add_eval_flags(pipeline, cfg);
  add_sweep_flags(pipeline, cfg);
  pipeline->add_flag("--with-sweep", with_sweep, "Also write sweep.csv");
  commands.push_back({pipeline, [&] {
                        if (cfg.input.empty()) throw UsageError("pipeline needs --input");
                        require_file(cfg.input, "input directory");
                        if (!cfg.test_input.empty()) require_file(cfg.test_input, "test directory");
                        if (!cfg.stoplist.empty()) require_file(cfg.stoplist, "stoplist");
                        run_pipeline(cfg, dir());
                        if (with_sweep) stage_sweep(cfg, dir());
                      }});

  auto* synth_cmd = app.add_subcommand("synth", "Write the synthetic topic corpus as a directory tree");
  synth_cmd->add_option("root", synth_root, "Destination directory")->capture_default_str();
  synth_cmd->add_option("--topics", synth.topics, "Number of topics")->capture_default_str();
  synth_cmd->add_option("--docs-per-topic", synth.docs_per_topic, "Documents per topic")->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "Generator seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (synth_cmd->parsed()) {
      write_corpus_tree(make_synthetic_corpus(synth), synth_root);
      return 0;
    }
    if (const auto seed = seed_from_environment()) cfg.override_seeds(*seed);
    if (!cfg.stoplist.empty()) require_file(cfg.stoplist, "stoplist");
    cfg.validate();

    set_deterministic(cfg.deterministic);
    if (!cfg.deterministic && cfg.threads > 0) set_num_threads(cfg.threads);

    for (const auto& c : commands) {
      if (!c.app->parsed()) continue;
      fs::create_directories(dir());
      save_config(cfg, dir() / artifact::kRunConfig);
      c.run();
    }
  } catch (const UsageError& e) {
    std::cerr << "clusart: error: " << e.what() << '\n';
    return 2;
  } catch (const ParameterError& e) {
    std::cerr << "clusart: error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "clusart: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
