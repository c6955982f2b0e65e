#include <doctest.h>

#include <cmath>
#include <numeric>

#include "clusart/corpus.hpp"
#include "clusart/error.hpp"
#include "clusart/pvec.hpp"
#include "clusart/random.hpp"
#include "clusart/synthetic.hpp"
#include "clusart/textprep.hpp"
#include "pv_fixture.hpp"
#include "support.hpp"

using namespace clusart;
using namespace clusart::pvec;

namespace {

Params small(Mode mode, Combine combine, std::size_t window) {
  Params p;
  p.para_dim = 4;
  p.word_dim = 4;
  p.window = window;
  p.mode = mode;
  p.combine = combine;
  p.min_count = 1;
  return p;
}

TokenizedDoc repeat(std::string id, std::vector<std::string> pattern, std::size_t times) {
  TokenizedDoc d{std::move(id), {}};
  for (std::size_t i = 0; i < times; ++i) d.tokens.insert(d.tokens.end(), pattern.begin(), pattern.end());
  return d;
}

std::vector<TokenizedDoc> synthetic_tokens() {
  return preprocess_corpus(make_synthetic_corpus(), default_stoplist());
}

}  // namespace

TEST_SUITE("pvec") {

TEST_CASE("parameter validation") {
  Params p;
  CHECK_NOTHROW(p.validate());
  p.epochs = 0;
  CHECK_THROWS_AS(p.validate(), ParameterError);
  p = Params{};
  p.word_dim = 30;
  CHECK_THROWS_AS(p.validate(), ParameterError);
  p.combine = Combine::kConcatenate;
  CHECK_NOTHROW(p.validate());
  CHECK(p.hidden_dim() == 50 + 2 * 4 * 30);
  p.mode = Mode::kDbow;
  CHECK(p.hidden_dim() == 50);
  CHECK(parse_mode("pv_dbow") == Mode::kDbow);
  CHECK(parse_mode("pv_dm") == Mode::kDm);
  CHECK(parse_combine("concatenate") == Combine::kConcatenate);
  CHECK_THROWS_AS(parse_mode("skipgram"), ParameterError);
}

TEST_CASE("context windows") {
  const std::vector<std::size_t> ids{5, 6, 7, 8};
  const Example avg = make_dm_example(ids, 3, 0, small(Mode::kDm, Combine::kAverage, 2));
  CHECK(avg.doc == 3);
  CHECK(avg.target == 5);
  CHECK(avg.context == std::vector<std::ptrdiff_t>{6, 7});
  const Example cat = make_dm_example(ids, 3, 1, small(Mode::kDm, Combine::kConcatenate, 2));
  CHECK(cat.target == 6);
  CHECK(cat.context == std::vector<std::ptrdiff_t>{-1, 5, 7, 8});
}

TEST_CASE("hidden vector construction") {
  const Model m = testing::mini_pv_model(small(Mode::kDm, Combine::kConcatenate, 1), 3, 4);
  const Example ex{1, {-1, 2}, 0};
  const auto h = hidden(m, ex);
  REQUIRE(h.size() == 12);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(h[i] == m.doc_vectors.row(1)[i]);
    CHECK(h[4 + i] == 0.0);
    CHECK(h[8 + i] == m.word_vectors.row(2)[i]);
  }
  const Model a = testing::mini_pv_model(small(Mode::kDm, Combine::kAverage, 1), 3, 4);
  const auto ha = hidden(a, Example{0, {1, 2}, 0});
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(ha[i] == doctest::Approx((a.doc_vectors.row(0)[i] + a.word_vectors.row(1)[i] +
                                    a.word_vectors.row(2)[i]) / 3.0));
}

TEST_CASE("analytic gradients match finite differences") {
  struct Case {
    Params params;
    Example ex;
  };
  const std::vector<Case> cases{
      {small(Mode::kDm, Combine::kAverage, 2), Example{0, {1, 2, 1}, 0}},
      {small(Mode::kDm, Combine::kAverage, 1), Example{1, {0}, 2}},
      {small(Mode::kDm, Combine::kConcatenate, 1), Example{1, {-1, 2}, 1}},
      {small(Mode::kDm, Combine::kConcatenate, 1), Example{0, {0, 0}, 0}},
      {small(Mode::kDbow, Combine::kAverage, 1), Example{0, {}, 2}},
  };
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    for (const auto& c : cases) {
      const Model m = testing::mini_pv_model(c.params, 3, seed);
      CHECK(testing::pv_gradient_error(m, c.ex) < 1e-4);
      CHECK(example_gradient(m, c.ex).loss == doctest::Approx(example_loss(m, c.ex)));
    }
  }
}

TEST_CASE("leaf probabilities are a distribution") {
  for (std::uint64_t seed : {1u, 7u, 19u}) {
    Params p = small(Mode::kDbow, Combine::kAverage, 1);
    const Model m = testing::mini_pv_model(p, 16, seed);
    const auto h = hidden(m, Example{0, {}, 0});
    const auto probs = leaf_probabilities(m, h);
    REQUIRE(probs.size() == 16);
    const double sum = std::accumulate(probs.begin(), probs.end(), 0.0);
    CHECK(std::abs(sum - 1.0) < 1e-9);
    for (std::size_t w = 0; w < 16; ++w)
      CHECK(-std::log(probs[w]) == doctest::Approx(example_loss(m, Example{0, {}, w})).epsilon(1e-12));
  }
}

TEST_CASE("plain softmax") {
  const auto p = plain_softmax(std::vector<double>{0.0, std::log(3.0)});
  CHECK(p[0] == doctest::Approx(0.25));
  CHECK(p[1] == doctest::Approx(0.75));
  const auto big = plain_softmax(std::vector<double>{1000.0, 1000.0});
  CHECK(big[0] == doctest::Approx(0.5));
}

TEST_CASE("one epoch equals replayed gradient steps") {
  // Constant learning rate so every step uses the same lr.
  Params p = small(Mode::kDm, Combine::kAverage, 1);
  p.epochs = 1;
  p.learning_rate = 0.05;
  p.min_learning_rate = 0.05;
  p.seed = 77;
  const std::vector<TokenizedDoc> docs{TokenizedDoc{"d", {"b", "a", "c", "a", "b"}}};
  const Model trained = train(docs, p);

  Model m;
  m.params = p;
  m.words = {"a", "b", "c"};
  m.counts = {2, 2, 1};
  m.tree = HuffmanTree::from_counts(m.counts);
  m.rebuild_index();
  Rng init(derive_seed(p.seed, 0));
  m.doc_vectors = Matrix(1, 4);
  for (auto& x : m.doc_vectors.data) x = (init.uniform() - 0.5) / 4.0;
  m.word_vectors = Matrix(3, 4);
  for (auto& x : m.word_vectors.data) x = (init.uniform() - 0.5) / 4.0;
  m.softmax_weights = Matrix(2, 4);
  m.softmax_bias.assign(2, 0.0);

  const auto ids = m.encode(docs[0].tokens);
  for (std::size_t t = 0; t < ids.size(); ++t) {
    const Example ex = make_dm_example(ids, 0, t, p);
    const ExampleGradient g = example_gradient(m, ex);
    for (std::size_t i = 0; i < 4; ++i) m.doc_vectors.row(0)[i] -= p.learning_rate * g.doc[i];
    for (const auto& [w, gw] : g.words)
      for (std::size_t i = 0; i < 4; ++i) m.word_vectors.row(w)[i] -= p.learning_rate * gw[i];
    for (const auto& [n, gu] : g.softmax_rows)
      for (std::size_t i = 0; i < 4; ++i) m.softmax_weights.row(n)[i] -= p.learning_rate * gu[i];
    for (const auto& [n, gb] : g.softmax_bias) m.softmax_bias[n] -= p.learning_rate * gb;
  }
  auto close = [](const std::vector<double>& a, const std::vector<double>& b) {
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
  };
  close(trained.doc_vectors.data, m.doc_vectors.data);
  close(trained.word_vectors.data, m.word_vectors.data);
  close(trained.softmax_weights.data, m.softmax_weights.data);
  close(trained.softmax_bias, m.softmax_bias);
}

TEST_CASE("vocabulary thresholds and skipped documents") {
  Params p = small(Mode::kDm, Combine::kAverage, 1);
  p.min_count = 2;
  p.epochs = 2;
  const std::vector<TokenizedDoc> docs{{"1", {"a", "b", "a"}}, {"2", {"b", "z"}}, {"3", {"q"}}};
  const Model m = train(docs, p);
  CHECK(m.words == std::vector<std::string>{"a", "b"});
  CHECK(m.counts == std::vector<std::size_t>{2, 2});
  CHECK(m.skipped_documents == 1);
  CHECK(m.trained == std::vector<bool>{true, true, false});
  CHECK(m.doc_vectors.rows == 3);
  CHECK(m.parameter_count() == 3 * 4 + 2 * 4 + 1 * (4 + 1));
  CHECK_THROWS_AS(infer_vector(m, TokenizedDoc{"x", {"q", "zz"}}, 3, 1), InferenceError);

  p.min_count = 5;
  CHECK_THROWS_AS(train(docs, p), EmptyVocabularyError);
  const std::vector<TokenizedDoc> one_word{{"1", {"a", "a"}}};
  p.min_count = 1;
  CHECK_THROWS_AS(train(one_word, p), DegenerateVocabularyError);
}

TEST_CASE("training is deterministic") {
  Params p = small(Mode::kDm, Combine::kAverage, 2);
  p.epochs = 5;
  const std::vector<TokenizedDoc> docs{repeat("1", {"a", "b", "c"}, 10), repeat("2", {"c", "d", "e"}, 10)};
  const Model a = train(docs, p);
  const Model b = train(docs, p);
  CHECK(a.doc_vectors == b.doc_vectors);
  CHECK(a.word_vectors == b.word_vectors);
  CHECK(a.softmax_weights == b.softmax_weights);
  CHECK(a.softmax_bias == b.softmax_bias);
  p.seed = 2;
  CHECK_FALSE(train(docs, p).doc_vectors == a.doc_vectors);
  CHECK(a.epoch_loss.back() < a.epoch_loss.front());
}

TEST_CASE("disjoint word pairs separate") {
  for (Mode mode : {Mode::kDm, Mode::kDbow}) {
    Params p;
    p.para_dim = 8;
    p.word_dim = 8;
    p.window = 1;
    p.epochs = 50;
    p.mode = mode;
    const std::vector<TokenizedDoc> docs{repeat("1", {"apple", "pear"}, 20), repeat("2", {"rock", "stone"}, 20),
                                         repeat("3", {"apple", "pear"}, 20)};
    const Model m = train(docs, p);
    const double across = cosine(m.doc_vectors.row(0), m.doc_vectors.row(1));
    const double within = cosine(m.doc_vectors.row(0), m.doc_vectors.row(2));
    INFO("mode " << to_string(mode) << " across " << across << " within " << within);
    CHECK(across < within);
  }
}

TEST_CASE("inference on fixtures") {
  const auto tokens = synthetic_tokens();
  Params p;  // defaults
  const Model m = train(tokens, p);
  const auto a = infer_vector(m, tokens[3], p.infer_epochs, 11);
  CHECK(a == infer_vector(m, tokens[3], p.infer_epochs, 11));

  double worst = 1.0;
  for (std::size_t i = 0; i < tokens.size(); i += 10) {
    const auto v = infer_vector(m, tokens[i], p.infer_epochs, derive_seed(5, i));
    worst = std::min(worst, cosine(v, m.doc_vectors.row(i)));
  }
  INFO("lowest self cosine " << worst);
  CHECK(worst >= 0.9);

  const auto batch = infer_batch(m, std::span(tokens).first(12), p.infer_epochs, 3);
  const auto ref = reference::infer_batch(m, std::span(tokens).first(12), p.infer_epochs, 3);
  CHECK(batch == ref);
}

TEST_CASE("ranking against centroids") {
  ClusterSummary a{0, {1.0, 0.0}, 1};
  ClusterSummary b{1, {0.0, 2.0}, 1};
  ClusterSummary c{2, {1.0, 1.0}, 1};
  const std::vector<ClusterSummary> s{a, b, c};
  const auto r = rank_categories(std::vector<double>{3.0, 0.0}, s);
  CHECK(r[0].category == 0);
  CHECK(r[0].similarity == doctest::Approx(1.0));
  CHECK(r[2].category == 1);
  CHECK(r[2].similarity == 0.0);
  CHECK(r[1].similarity == doctest::Approx(std::sqrt(0.5)));
  // Equal similarity resolves to the smaller category.
  const auto tie = rank_categories(std::vector<double>{1.0, 1.0}, std::vector<ClusterSummary>{a, b});
  CHECK(tie[0].category == 0);
}

TEST_CASE("topic documents rank their own cluster first") {
  const Corpus corpus = make_synthetic_corpus();
  const auto tokens = preprocess_corpus(corpus, default_stoplist());
  // Train on every fifth document left out, two topics.
  std::vector<TokenizedDoc> train_docs, test_docs;
  std::vector<std::string> train_labels, test_labels;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const std::string label = *corpus[i].gold_label;
    if (label != "comp.graphics" && label != "rec.sport.hockey") continue;
    (i % 5 == 0 ? test_docs : train_docs).push_back(tokens[i]);
    (i % 5 == 0 ? test_labels : train_labels).push_back(label);
  }
  const Model m = train(train_docs, Params{});
  std::vector<std::vector<std::size_t>> clusters(2);
  for (std::size_t i = 0; i < train_docs.size(); ++i) clusters[train_labels[i] == "comp.graphics" ? 0 : 1].push_back(i);
  const auto summaries = summarize_clusters(m, clusters);
  REQUIRE(summaries.size() == 2);
  CHECK(summaries[0].member_count == clusters[0].size());
  for (std::size_t i = 0; i < test_docs.size(); ++i) {
    const auto r = classify(m, summaries, test_docs[i], derive_seed(1, i));
    CHECK(r[0].category == (test_labels[i] == "comp.graphics" ? 0u : 1u));
  }
}

TEST_CASE("model persistence round trip") {
  Params p = small(Mode::kDm, Combine::kConcatenate, 1);
  p.epochs = 3;
  const std::vector<TokenizedDoc> docs{repeat("1", {"a", "b", "c"}, 5), repeat("2", {"c", "d"}, 5)};
  const Model m = train(docs, p);
  testing::TempDir tmp;
  save_model(m, tmp / "pv.json");
  const Model back = load_model(tmp / "pv.json");
  CHECK(back.words == m.words);
  CHECK(back.counts == m.counts);
  CHECK(back.doc_ids == m.doc_ids);
  CHECK(back.doc_vectors == m.doc_vectors);
  CHECK(back.word_vectors == m.word_vectors);
  CHECK(back.softmax_weights == m.softmax_weights);
  CHECK(back.softmax_bias == m.softmax_bias);
  CHECK(back.params.combine == Combine::kConcatenate);
  for (std::size_t i = 0; i < m.words.size(); ++i) CHECK(back.tree.path(i).bits == m.tree.path(i).bits);
  CHECK(infer_vector(back, docs[0], 3, 9) == infer_vector(m, docs[0], 3, 9));
}

}
