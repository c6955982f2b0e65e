#include "clusart/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <unordered_map>

#include "clusart/error.hpp"
#include "csv.hpp"

namespace fs = std::filesystem;

namespace clusart {

namespace {

std::vector<std::size_t> indices_of(const Corpus& corpus, Split split) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (corpus[i].split == split) out.push_back(i);
  }
  return out;
}

template <typename T>
std::vector<T> pick(std::span<const T> items, std::span<const std::size_t> idx) {
  std::vector<T> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(items[i]);
  return out;
}

void require_tokens_match(const Corpus& corpus, std::span<const TokenizedDoc> tokens) {
  if (tokens.size() != corpus.size()) {
    throw FormatError("token file holds " + std::to_string(tokens.size()) + " documents, corpus has " +
                      std::to_string(corpus.size()));
  }
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].id != corpus[i].id) throw FormatError("token file is out of step with the corpus at '" + corpus[i].id + "'");
  }
}

Stoplist stoplist_for(const RunConfig& config) {
  return config.stoplist.empty() ? default_stoplist() : load_stoplist(config.stoplist);
}

std::size_t largest_cluster(std::span<const std::size_t> categories) {
  std::map<std::size_t, std::size_t> sizes;
  for (auto c : categories) ++sizes[c];
  std::size_t best = 0, best_size = 0;
  for (const auto& [c, n] : sizes) {
    if (n > best_size) {
      best = c;
      best_size = n;
    }
  }
  return best;
}

Evaluation evaluate_run(const Corpus& corpus, std::span<const DocVector> vectors,
                        std::span<const std::size_t> train_categories, std::span<const TopicRow> topics,
                        std::size_t knn_k, std::size_t category_count) {
  const auto train_idx = indices_of(corpus, Split::kTrain);
  if (train_categories.size() != train_idx.size()) {
    throw FormatError("assignments do not cover the training split");
  }
  std::vector<std::size_t> mapped_categories;
  std::vector<std::string> train_gold;
  std::vector<DocVector> knn_train;
  for (std::size_t i = 0; i < train_idx.size(); ++i) {
    const auto& doc = corpus[train_idx[i]];
    if (!doc.gold_label) continue;
    mapped_categories.push_back(train_categories[i]);
    train_gold.push_back(*doc.gold_label);
    knn_train.push_back(vectors[train_idx[i]]);
  }
  if (train_gold.empty()) throw ParameterError("evaluation needs gold labels on the training split");

  Evaluation ev;
  ev.categories = category_count;
  ev.cluster_map = eval::map_clusters_majority(mapped_categories, train_gold);

  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < corpus.size(); ++i) position.emplace(corpus[i].id, i);

  std::vector<std::string> predicted, gold;
  std::vector<DocVector> queries;
  for (const auto& row : topics) {
    const auto it = position.find(row.doc_id);
    if (it == position.end()) throw FormatError("topic row for unknown document '" + row.doc_id + "'");
    const auto& doc = corpus[it->second];
    if (row.fallback) ++ev.fallback_rows;
    if (!doc.gold_label) continue;
    const auto label = ev.cluster_map.labels.find(row.predicted_category);
    predicted.push_back(label == ev.cluster_map.labels.end() ? std::string() : label->second);
    gold.push_back(*doc.gold_label);
    queries.push_back(vectors[it->second]);
  }
  ev.clusart = eval::prf(predicted, gold);

  ev.knn_k = std::min(knn_k, knn_train.size());
  const auto knn_pred = eval::knn_predict_batch(knn_train, train_gold, queries, ev.knn_k);
  ev.knn = eval::prf(knn_pred, gold);
  return ev;
}

void write_json(const nlohmann::json& j, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

}  // namespace

Vectorized vectorize(const Corpus& corpus, std::span<const TokenizedDoc> tokens, std::size_t n) {
  require_tokens_match(corpus, tokens);
  const auto train_idx = indices_of(corpus, Split::kTrain);
  if (train_idx.empty()) throw ParameterError("the training split is empty");
  std::vector<const TokenizedDoc*> train_docs, all_docs;
  for (auto i : train_idx) train_docs.push_back(&tokens[i]);
  for (const auto& t : tokens) all_docs.push_back(&t);

  Vectorized out;
  out.vocabulary = build_vocabulary(std::span<const TokenizedDoc* const>(train_docs), n);
  const auto raw = tfidf_matrix(all_docs, out.vocabulary);
  const auto raw_train = pick<std::vector<double>>(raw, train_idx);
  out.scaling = fit_scaling(raw_train);
  out.vectors.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    out.vectors.push_back({corpus[i].id, apply_scaling(raw[i], out.scaling)});
  }
  return out;
}

Classification classify_test_documents(std::span<const TokenizedDoc> train_tokens,
                                       std::span<const std::size_t> train_categories,
                                       std::span<const TokenizedDoc> test_tokens,
                                       const pvec::Params& params, std::uint64_t infer_seed) {
  if (train_tokens.size() != train_categories.size()) {
    throw DomainError("every training document needs a cluster");
  }
  Classification out;
  out.model = pvec::train(train_tokens, params);

  std::size_t cluster_count = 0;
  for (auto c : train_categories) cluster_count = std::max(cluster_count, c + 1);
  std::vector<std::vector<std::size_t>> clusters(cluster_count);
  for (std::size_t i = 0; i < train_categories.size(); ++i) clusters[train_categories[i]].push_back(i);
  out.summaries = pvec::summarize_clusters(out.model, clusters);
  if (out.summaries.empty()) throw ParameterError("no cluster has a trained paragraph vector");

  const std::size_t fallback = largest_cluster(train_categories);
  const auto vectors = pvec::infer_batch(out.model, test_tokens, params.infer_epochs, infer_seed);
  out.rows.reserve(test_tokens.size());
  for (std::size_t i = 0; i < test_tokens.size(); ++i) {
    TopicRow row;
    row.doc_id = test_tokens[i].id;
    if (!vectors[i]) {
      row.predicted_category = fallback;
      row.fallback = true;
    } else {
      const auto ranked = pvec::rank_categories(*vectors[i], out.summaries);
      row.predicted_category = ranked[0].category;
      row.similarity = ranked[0].similarity;
      if (ranked.size() > 1) {
        row.rank2_category = ranked[1].category;
        row.rank2_similarity = ranked[1].similarity;
      }
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

nlohmann::json to_json(const Evaluation& ev) {
  return {{"clusart", eval::to_json(ev.clusart)},
          {"knn", eval::to_json(ev.knn)},
          {"knn_k", ev.knn_k},
          {"cluster_map", eval::to_json(ev.cluster_map)},
          {"categories", ev.categories},
          {"fallback_rows", ev.fallback_rows}};
}

PipelineResult run_in_memory(const Corpus& corpus, const RunConfig& config) {
  config.validate();
  auto tokens = preprocess_corpus(corpus, stoplist_for(config));
  auto vectorized = vectorize(corpus, tokens, config.vocab_size);

  const auto train_idx = indices_of(corpus, Split::kTrain);
  const auto test_idx = indices_of(corpus, Split::kTest);
  auto clustering = fuzzyart::train(pick<DocVector>(vectorized.vectors, train_idx), config.art);

  std::vector<std::size_t> categories;
  for (const auto& a : clustering.assignments) categories.push_back(a.category);
  auto classification = classify_test_documents(pick<TokenizedDoc>(tokens, train_idx), categories,
                                                pick<TokenizedDoc>(tokens, test_idx), config.pv,
                                                config.infer_seed);
  auto evaluation = evaluate_run(corpus, vectorized.vectors, categories, classification.rows, config.knn_k,
                                 clustering.model.category_count());
  return {std::move(tokens), std::move(vectorized), std::move(clustering), std::move(classification),
          std::move(evaluation)};
}

void stage_ingest(const RunConfig& config, const fs::path& dir) {
  if (config.input.empty()) throw ParameterError("ingest needs --input");
  const LoadOptions options{config.strip_headers};
  Corpus corpus;
  if (!config.test_input.empty()) {
    corpus = split_corpus(load_newsgroups_split_dirs(config.input, config.test_input, options),
                          PredefinedSplit{});
  } else if (config.split == SplitMode::kPredefined) {
    const fs::path root(config.input);
    if (!fs::is_directory(root / "train") || !fs::is_directory(root / "test")) {
      throw ParameterError("predefined split needs --test-input or train/ and test/ under --input");
    }
    corpus = split_corpus(load_newsgroups_split_dirs(root / "train", root / "test", options),
                          PredefinedSplit{});
  } else {
    corpus = split_corpus(load_newsgroups_dir(config.input, options),
                          RandomSplit{config.split_ratio, config.split_seed});
  }
  fs::create_directories(dir);
  save_manifest(corpus, dir / artifact::kCorpus);
}

void stage_preprocess(const RunConfig& config, const fs::path& dir) {
  const Corpus corpus = load_manifest(dir / artifact::kCorpus);
  save_tokens(preprocess_corpus(corpus, stoplist_for(config)), dir / artifact::kTokens);
}

void stage_vectorize(const RunConfig& config, const fs::path& dir) {
  const Corpus corpus = load_manifest(dir / artifact::kCorpus);
  const auto tokens = load_tokens(dir / artifact::kTokens);
  const auto v = vectorize(corpus, tokens, config.vocab_size);
  save_vocabulary(v.vocabulary, v.scaling, dir / artifact::kVocabulary);
  save_vectors_csv(v.vectors, v.vocabulary.size(), dir / artifact::kVectors);
}

namespace {

std::vector<DocVector> load_split_vectors(const Corpus& corpus, const fs::path& dir, Split split) {
  const auto vectors = load_vectors_csv(dir / artifact::kVectors);
  if (vectors.size() != corpus.size()) throw FormatError("vectors.csv does not match the corpus");
  std::vector<DocVector> out;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (vectors[i].doc_id != corpus[i].id) throw FormatError("vectors.csv is out of step with the corpus");
    if (corpus[i].split == split) out.push_back(vectors[i]);
  }
  return out;
}

std::vector<std::size_t> load_train_categories(const Corpus& corpus, const fs::path& dir) {
  const auto assignments = fuzzyart::load_assignments(dir / artifact::kAssignments);
  const auto train_idx = indices_of(corpus, Split::kTrain);
  if (assignments.size() != train_idx.size()) throw FormatError("assignments.csv does not match the training split");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (assignments[i].doc_id != corpus[train_idx[i]].id) throw FormatError("assignments.csv is out of order");
    out.push_back(assignments[i].category);
  }
  return out;
}

}  // namespace

void stage_train(const RunConfig& config, const fs::path& dir) {
  const Corpus corpus = load_manifest(dir / artifact::kCorpus);
  const auto result = fuzzyart::train(load_split_vectors(corpus, dir, Split::kTrain), config.art);
  fuzzyart::save_model(result.model, dir / artifact::kModel);
  fuzzyart::save_assignments(result.assignments, dir / artifact::kAssignments);
}

void stage_classify(const RunConfig& config, const fs::path& dir) {
  const Corpus corpus = load_manifest(dir / artifact::kCorpus);
  const auto tokens = load_tokens(dir / artifact::kTokens);
  require_tokens_match(corpus, tokens);
  const auto categories = load_train_categories(corpus, dir);
  const auto train_tokens = pick<TokenizedDoc>(tokens, indices_of(corpus, Split::kTrain));
  const auto test_tokens = pick<TokenizedDoc>(tokens, indices_of(corpus, Split::kTest));
  const auto c = classify_test_documents(train_tokens, categories, test_tokens, config.pv, config.infer_seed);
  pvec::save_model(c.model, dir / artifact::kPvModel);
  save_topics(c.rows, dir / artifact::kTopics);
}

void stage_evaluate(const RunConfig& config, const fs::path& dir) {
  const Corpus corpus = load_manifest(dir / artifact::kCorpus);
  const auto vectors = load_vectors_csv(dir / artifact::kVectors);
  if (vectors.size() != corpus.size()) throw FormatError("vectors.csv does not match the corpus");
  const auto categories = load_train_categories(corpus, dir);
  const auto model = fuzzyart::load_model(dir / artifact::kModel);
  const auto topics = load_topics(dir / artifact::kTopics);
  const auto ev = evaluate_run(corpus, vectors, categories, topics, config.knn_k, model.category_count());
  write_json(to_json(ev), dir / artifact::kReport);
}

void stage_sweep(const RunConfig& config, const fs::path& dir) {
  const Corpus corpus = load_manifest(dir / artifact::kCorpus);
  const auto vectors = load_split_vectors(corpus, dir, Split::kTrain);
  const auto grid = eval::parse_grid(config.rho_grid);
  eval::save_sweep(eval::vigilance_sweep(vectors, config.art, grid), dir / artifact::kSweep);
}

void run_pipeline(const RunConfig& config, const fs::path& dir) {
  config.validate();
  stage_ingest(config, dir);
  stage_preprocess(config, dir);
  stage_vectorize(config, dir);
  stage_train(config, dir);
  stage_classify(config, dir);
  stage_evaluate(config, dir);
}

void save_topics(std::span<const TopicRow> rows, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << "doc_id,predicted_category,similarity,rank2_category,rank2_similarity,fallback\n";
  for (const auto& r : rows) {
    out << csv::quote(r.doc_id) << ',' << r.predicted_category << ',';
    if (!r.fallback) out << csv::number(r.similarity);
    out << ',';
    if (r.rank2_category) out << *r.rank2_category << ',' << csv::number(r.rank2_similarity);
    else out << ',';
    out << ',' << (r.fallback ? 1 : 0) << '\n';
  }
}

std::vector<TopicRow> load_topics(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::string line;
  std::getline(in, line);
  std::vector<TopicRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = csv::split(line);
    if (f.size() != 6) throw FormatError(path.string() + ": expected 6 fields");
    try {
      TopicRow r;
      r.doc_id = f[0];
      r.predicted_category = std::stoull(f[1]);
      r.similarity = f[2].empty() ? 0.0 : std::stod(f[2]);
      if (!f[3].empty()) {
        r.rank2_category = std::stoull(f[3]);
        r.rank2_similarity = std::stod(f[4]);
      }
      r.fallback = f[5] == "1";
      rows.push_back(std::move(r));
    } catch (const std::exception&) {
      throw FormatError(path.string() + ": bad row '" + line + "'");
    }
  }
  return rows;
}

}  // namespace clusart
