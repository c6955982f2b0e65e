#include "clusart/pvec.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <type_traits>

#include <json.hpp>

#include "clusart/error.hpp"
#include "clusart/random.hpp"

namespace clusart::pvec {

std::string_view to_string(Mode mode) { return mode == Mode::kDm ? "pv_dm" : "pv_dbow"; }

std::string_view to_string(Combine combine) {
  return combine == Combine::kAverage ? "average" : "concatenate";
}

Mode parse_mode(std::string_view text) {
  if (text == "pv_dm" || text == "dm") return Mode::kDm;
  if (text == "pv_dbow" || text == "dbow") return Mode::kDbow;
  throw ParameterError("PV mode must be pv_dm or pv_dbow, got '" + std::string(text) + "'");
}

Combine parse_combine(std::string_view text) {
  if (text == "average") return Combine::kAverage;
  if (text == "concatenate") return Combine::kConcatenate;
  throw ParameterError("combine must be average or concatenate, got '" + std::string(text) + "'");
}

void Params::validate() const {
  if (para_dim < 1 || word_dim < 1) throw ParameterError("para_dim and word_dim must be >= 1");
  if (window < 1) throw ParameterError("window must be >= 1");
  if (epochs < 1) throw ParameterError("PV epochs must be >= 1, got " + std::to_string(epochs));
  if (infer_epochs < 1) throw ParameterError("infer_epochs must be >= 1");
  if (!(learning_rate > 0.0)) throw ParameterError("learning rate must be > 0");
  if (!(min_learning_rate >= 0.0 && min_learning_rate <= learning_rate)) {
    throw ParameterError("min learning rate must lie in [0, learning_rate]");
  }
  if (min_count < 1) throw ParameterError("min_count must be >= 1");
  if (mode == Mode::kDm && combine == Combine::kAverage && para_dim != word_dim) {
    throw ParameterError("pv_dm with averaging needs para_dim == word_dim (got " +
                         std::to_string(para_dim) + " and " + std::to_string(word_dim) + ")");
  }
}

std::size_t Params::hidden_dim() const {
  if (mode == Mode::kDbow) return para_dim;
  if (combine == Combine::kAverage) return word_dim;
  return para_dim + 2 * window * word_dim;
}

std::ptrdiff_t Model::word_index(const std::string& word) const {
  const auto it = index_.find(word);
  return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

std::vector<std::size_t> Model::encode(const std::vector<std::string>& tokens) const {
  std::vector<std::size_t> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) {
    const auto i = word_index(t);
    if (i >= 0) ids.push_back(static_cast<std::size_t>(i));
  }
  return ids;
}

std::size_t Model::parameter_count() const {
  return doc_vectors.data.size() + word_vectors.data.size() + softmax_weights.data.size() +
         softmax_bias.size();
}

void Model::rebuild_index() {
  index_.clear();
  for (std::size_t i = 0; i < words.size(); ++i) index_.emplace(words[i], i);
}

namespace {

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// log(sigmoid(x)) without overflow.
double log_sigmoid(double x) {
  return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// +1 pushes the node's score up (bit 0), -1 down (bit 1).
double bit_sign(std::uint8_t bit) { return bit == 0 ? 1.0 : -1.0; }

// Routes dL/dh back to the inputs it was built from. `sink(kind, index, grad)`
// receives the doc gradient (kind 0) and each word gradient (kind 1).
template <typename Sink>
void backprop_hidden(const Params& p, const Example& ex, std::span<const double> grad_h, Sink&& sink) {
  if (p.mode == Mode::kDbow) {
    sink(0, ex.doc, grad_h, 1.0);
    return;
  }
  if (p.combine == Combine::kAverage) {
    const double scale = 1.0 / static_cast<double>(1 + ex.context.size());
    sink(0, ex.doc, grad_h, scale);
    for (auto c : ex.context) sink(1, static_cast<std::size_t>(c), grad_h, scale);
    return;
  }
  sink(0, ex.doc, grad_h.subspan(0, p.para_dim), 1.0);
  for (std::size_t slot = 0; slot < ex.context.size(); ++slot) {
    if (ex.context[slot] < 0) continue;
    sink(1, static_cast<std::size_t>(ex.context[slot]),
         grad_h.subspan(p.para_dim + slot * p.word_dim, p.word_dim), 1.0);
  }
}

// One SGD step on an example. Gradients w.r.t. h are taken with the softmax
// parameters as they were before the step, so the update equals
// theta - lr * dL/dtheta exactly. With a const model only `doc_vec` moves.
template <typename M>
double sgd_step(M& model, const Example& ex, std::span<double> doc_vec, double lr,
                std::vector<double>& h, std::vector<double>& grad_h) {
  constexpr bool kShared = !std::is_const_v<M>;
  h = hidden_with(model, ex, doc_vec);
  grad_h.assign(h.size(), 0.0);
  const auto& path = model.tree.path(ex.target);
  double loss = 0.0;
  for (std::size_t j = 0; j < path.nodes.size(); ++j) {
    const std::size_t node = path.nodes[j];
    auto u = model.softmax_weights.row(node);
    const double s = bit_sign(path.bits[j]);
    const double x = dot(u, h) + model.softmax_bias[node];
    loss -= log_sigmoid(s * x);
    const double g = -s * sigmoid(-s * x);  // dL/dx
    for (std::size_t i = 0; i < h.size(); ++i) grad_h[i] += g * u[i];
    if constexpr (kShared) {
      for (std::size_t i = 0; i < h.size(); ++i) u[i] -= lr * g * h[i];
      model.softmax_bias[node] -= lr * g;
    }
  }
  backprop_hidden(model.params, ex, grad_h,
                  [&](int kind, std::size_t index, std::span<const double> grad, double scale) {
                    if (kind == 0) {
                      for (std::size_t i = 0; i < grad.size(); ++i) doc_vec[i] -= lr * scale * grad[i];
                    } else if constexpr (kShared) {
                      auto w = model.word_vectors.row(index);
                      for (std::size_t i = 0; i < grad.size(); ++i) w[i] -= lr * scale * grad[i];
                    }
                  });
  return loss;
}

// Picks the DBOW target: a uniformly sampled word of the window around `position`.
Example make_dbow_example(std::span<const std::size_t> tokens, std::size_t doc, std::size_t position,
                          std::size_t window, Rng& rng) {
  const std::size_t lo = position >= window ? position - window : 0;
  const std::size_t hi = std::min(tokens.size() - 1, position + window);
  const std::size_t pick = lo + static_cast<std::size_t>(rng.below(hi - lo + 1));
  return Example{doc, {}, tokens[pick]};
}

std::vector<double> random_vector(std::size_t dim, Rng& rng) {
  std::vector<double> v(dim);
  for (auto& x : v) x = (rng.uniform() - 0.5) / static_cast<double>(dim);
  return v;
}

double learning_rate_at(const Params& p, double progress) {
  return std::max(p.min_learning_rate,
                  p.learning_rate - (p.learning_rate - p.min_learning_rate) * progress);
}

// Runs `epochs` passes over one document's positions, updating only `d`.
std::vector<double> optimize_doc_vector(const Model& model, std::span<const std::size_t> ids,
                                        int epochs, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> d = random_vector(model.params.para_dim, rng);
  std::vector<double> h, grad_h;
  const double total = static_cast<double>(epochs) * static_cast<double>(ids.size());
  double done = 0.0;
  for (int e = 0; e < epochs; ++e) {
    for (std::size_t t = 0; t < ids.size(); ++t, done += 1.0) {
      const double lr = learning_rate_at(model.params, done / total);
      const Example ex = model.params.mode == Mode::kDm
                             ? make_dm_example(ids, 0, t, model.params)
                             : make_dbow_example(ids, 0, t, model.params.window, rng);
      sgd_step(model, ex, d, lr, h, grad_h);
    }
  }
  return d;
}

}  // namespace

Example make_dm_example(std::span<const std::size_t> tokens, std::size_t doc, std::size_t position,
                        const Params& params) {
  Example ex{doc, {}, tokens[position]};
  const auto k = static_cast<std::ptrdiff_t>(params.window);
  const auto t = static_cast<std::ptrdiff_t>(position);
  const auto n = static_cast<std::ptrdiff_t>(tokens.size());
  const bool pad = params.combine == Combine::kConcatenate;
  for (std::ptrdiff_t off = -k; off <= k; ++off) {
    if (off == 0) continue;
    const std::ptrdiff_t i = t + off;
    if (i >= 0 && i < n) {
      ex.context.push_back(static_cast<std::ptrdiff_t>(tokens[static_cast<std::size_t>(i)]));
    } else if (pad) {
      ex.context.push_back(-1);
    }
  }
  return ex;
}

std::vector<double> hidden_with(const Model& model, const Example& ex,
                                std::span<const double> doc_vector) {
  const Params& p = model.params;
  if (p.mode == Mode::kDbow) return {doc_vector.begin(), doc_vector.end()};
  if (p.combine == Combine::kAverage) {
    std::vector<double> h(doc_vector.begin(), doc_vector.end());
    for (auto c : ex.context) {
      const auto w = model.word_vectors.row(static_cast<std::size_t>(c));
      for (std::size_t i = 0; i < h.size(); ++i) h[i] += w[i];
    }
    const double scale = 1.0 / static_cast<double>(1 + ex.context.size());
    for (auto& x : h) x *= scale;
    return h;
  }
  std::vector<double> h(p.hidden_dim(), 0.0);
  std::copy(doc_vector.begin(), doc_vector.end(), h.begin());
  for (std::size_t slot = 0; slot < ex.context.size(); ++slot) {
    if (ex.context[slot] < 0) continue;
    const auto w = model.word_vectors.row(static_cast<std::size_t>(ex.context[slot]));
    std::copy(w.begin(), w.end(), h.begin() + static_cast<std::ptrdiff_t>(p.para_dim + slot * p.word_dim));
  }
  return h;
}

std::vector<double> hidden(const Model& model, const Example& ex) {
  return hidden_with(model, ex, model.doc_vectors.row(ex.doc));
}

double example_loss(const Model& model, const Example& ex) {
  const auto h = hidden(model, ex);
  const auto& path = model.tree.path(ex.target);
  double loss = 0.0;
  for (std::size_t j = 0; j < path.nodes.size(); ++j) {
    const std::size_t node = path.nodes[j];
    const double x = dot(model.softmax_weights.row(node), h) + model.softmax_bias[node];
    loss -= log_sigmoid(bit_sign(path.bits[j]) * x);
  }
  return loss;
}

ExampleGradient example_gradient(const Model& model, const Example& ex) {
  const auto h = hidden(model, ex);
  ExampleGradient out;
  std::vector<double> grad_h(h.size(), 0.0);
  const auto& path = model.tree.path(ex.target);
  for (std::size_t j = 0; j < path.nodes.size(); ++j) {
    const std::size_t node = path.nodes[j];
    const auto u = model.softmax_weights.row(node);
    const double s = bit_sign(path.bits[j]);
    const double x = dot(u, h) + model.softmax_bias[node];
    out.loss -= log_sigmoid(s * x);
    const double g = -s * sigmoid(-s * x);
    for (std::size_t i = 0; i < h.size(); ++i) grad_h[i] += g * u[i];
    auto& gu = out.softmax_rows[node];
    gu.assign(h.size(), 0.0);
    for (std::size_t i = 0; i < h.size(); ++i) gu[i] += g * h[i];
    out.softmax_bias[node] += g;
  }
  out.doc.assign(model.params.para_dim, 0.0);
  backprop_hidden(model.params, ex, grad_h,
                  [&](int kind, std::size_t index, std::span<const double> grad, double scale) {
                    std::vector<double>& dst =
                        kind == 0 ? out.doc : out.words.try_emplace(index, grad.size(), 0.0).first->second;
                    for (std::size_t i = 0; i < grad.size(); ++i) dst[i] += scale * grad[i];
                  });
  return out;
}

std::vector<double> leaf_probabilities(const Model& model, std::span<const double> h) {
  std::vector<double> probs(model.tree.leaf_count());
  for (std::size_t w = 0; w < probs.size(); ++w) {
    const auto& path = model.tree.path(w);
    double logp = 0.0;
    for (std::size_t j = 0; j < path.nodes.size(); ++j) {
      const std::size_t node = path.nodes[j];
      const double x = dot(model.softmax_weights.row(node), h) + model.softmax_bias[node];
      logp += log_sigmoid(bit_sign(path.bits[j]) * x);
    }
    probs[w] = std::exp(logp);
  }
  return probs;
}

std::vector<double> plain_softmax(std::span<const double> logits) {
  if (logits.empty()) return {};
  const double top = *std::max_element(logits.begin(), logits.end());
  std::vector<double> out(logits.size());
  double z = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) z += (out[i] = std::exp(logits[i] - top));
  for (auto& x : out) x /= z;
  return out;
}

Model train(std::span<const TokenizedDoc> docs, const Params& params) {
  params.validate();
  std::map<std::string, std::size_t> freq;
  for (const auto& d : docs) {
    for (const auto& t : d.tokens) ++freq[t];
  }
  std::erase_if(freq, [&](const auto& kv) { return kv.second < params.min_count; });
  if (freq.empty()) throw EmptyVocabularyError("no word reaches min_count; embedding vocabulary is empty");

  Model model;
  model.params = params;
  for (const auto& [w, c] : freq) {
    model.words.push_back(w);
    model.counts.push_back(c);
  }
  model.rebuild_index();
  model.tree = HuffmanTree::from_counts(model.counts);

  const std::size_t n_docs = docs.size();
  const std::size_t vocab = model.words.size();
  const std::size_t hdim = params.hidden_dim();

  Rng init(derive_seed(params.seed, 0));
  model.doc_vectors = Matrix(n_docs, params.para_dim);
  for (auto& x : model.doc_vectors.data) x = (init.uniform() - 0.5) / static_cast<double>(params.para_dim);
  if (params.mode == Mode::kDm) {
    model.word_vectors = Matrix(vocab, params.word_dim);
    for (auto& x : model.word_vectors.data) x = (init.uniform() - 0.5) / static_cast<double>(params.word_dim);
  }
  model.softmax_weights = Matrix(vocab - 1, hdim);
  model.softmax_bias.assign(vocab - 1, 0.0);

  std::vector<std::vector<std::size_t>> encoded(n_docs);
  std::vector<std::size_t> usable;
  std::size_t total_tokens = 0;
  model.trained.assign(n_docs, false);
  for (std::size_t i = 0; i < n_docs; ++i) {
    model.doc_ids.push_back(docs[i].id);
    encoded[i] = model.encode(docs[i].tokens);
    if (encoded[i].empty()) {
      ++model.skipped_documents;
      continue;
    }
    model.trained[i] = true;
    usable.push_back(i);
    total_tokens += encoded[i].size();
  }
  if (usable.empty()) throw EmptyVocabularyError("no document has an in-vocabulary token");

  Rng order_rng(derive_seed(params.seed, 1));
  std::vector<double> h, grad_h;
  const double total = static_cast<double>(params.epochs) * static_cast<double>(total_tokens);
  double done = 0.0;
  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    std::vector<std::size_t> order = usable;
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[order_rng.below(i)]);
    double loss_sum = 0.0;
    for (std::size_t d : order) {
      const auto& ids = encoded[d];
      for (std::size_t t = 0; t < ids.size(); ++t, done += 1.0) {
        const double lr = learning_rate_at(params, done / total);
        const Example ex = params.mode == Mode::kDm
                               ? make_dm_example(ids, d, t, params)
                               : make_dbow_example(ids, d, t, params.window, order_rng);
        loss_sum += sgd_step(model, ex, model.doc_vectors.row(d), lr, h, grad_h);
      }
    }
    model.epoch_loss.push_back(loss_sum / static_cast<double>(total_tokens));
  }
  return model;
}

std::vector<double> infer_vector(const Model& model, const TokenizedDoc& doc, int infer_epochs,
                                 std::uint64_t seed) {
  if (infer_epochs < 1) throw ParameterError("infer_epochs must be >= 1");
  const auto ids = model.encode(doc.tokens);
  if (ids.empty()) throw InferenceError("document '" + doc.id + "' has no in-vocabulary token");
  return optimize_doc_vector(model, ids, infer_epochs, seed);
}

std::vector<std::optional<std::vector<double>>> infer_batch(const Model& model,
                                                            std::span<const TokenizedDoc> docs,
                                                            int infer_epochs, std::uint64_t seed) {
  if (infer_epochs < 1) throw ParameterError("infer_epochs must be >= 1");
  std::vector<std::optional<std::vector<double>>> out(docs.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(docs.size()); ++i) {
    const auto ids = model.encode(docs[i].tokens);
    if (!ids.empty()) {
      out[i] = optimize_doc_vector(model, ids, infer_epochs, derive_seed(seed, static_cast<std::uint64_t>(i)));
    }
  }
  return out;
}

namespace reference {

std::vector<std::optional<std::vector<double>>> infer_batch(const Model& model,
                                                            std::span<const TokenizedDoc> docs,
                                                            int infer_epochs, std::uint64_t seed) {
  std::vector<std::optional<std::vector<double>>> out;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    try {
      out.emplace_back(infer_vector(model, docs[i], infer_epochs, derive_seed(seed, i)));
    } catch (const InferenceError&) {
      out.emplace_back(std::nullopt);
    }
  }
  return out;
}

}  // namespace reference

double cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("cosine: length mismatch");
  const double na = std::sqrt(dot(a, a));
  const double nb = std::sqrt(dot(b, b));
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot(a, b) / (na * nb);
}

std::vector<ClusterSummary> summarize_clusters(const Model& model,
                                               const std::vector<std::vector<std::size_t>>& clusters) {
  std::vector<ClusterSummary> out;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    ClusterSummary s{c, std::vector<double>(model.params.para_dim, 0.0), 0};
    for (std::size_t row : clusters[c]) {
      if (row >= model.doc_vectors.rows) throw DomainError("cluster member outside the paragraph matrix");
      if (!model.trained[row]) continue;
      const auto d = model.doc_vectors.row(row);
      for (std::size_t i = 0; i < d.size(); ++i) s.centroid[i] += d[i];
      ++s.member_count;
    }
    if (s.member_count == 0) continue;
    for (auto& x : s.centroid) x /= static_cast<double>(s.member_count);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Ranked> rank_categories(std::span<const double> vector,
                                    std::span<const ClusterSummary> summaries) {
  std::vector<Ranked> out;
  out.reserve(summaries.size());
  for (const auto& s : summaries) out.push_back({s.category, cosine(vector, s.centroid)});
  std::sort(out.begin(), out.end(), [](const Ranked& a, const Ranked& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.category < b.category;
  });
  return out;
}

std::vector<Ranked> classify(const Model& model, std::span<const ClusterSummary> summaries,
                             const TokenizedDoc& doc, std::uint64_t seed) {
  if (summaries.empty()) throw ParameterError("classification needs at least one cluster summary");
  const auto v = infer_vector(model, doc, model.params.infer_epochs, seed);
  return rank_categories(v, summaries);
}

namespace {

nlohmann::json matrix_json(const Matrix& m) {
  return {{"rows", m.rows}, {"cols", m.cols}, {"data", m.data}};
}

Matrix matrix_from(const nlohmann::json& j) {
  Matrix m;
  m.rows = j.at("rows").get<std::size_t>();
  m.cols = j.at("cols").get<std::size_t>();
  m.data = j.at("data").get<std::vector<double>>();
  if (m.data.size() != m.rows * m.cols) throw FormatError("matrix data has wrong length");
  return m;
}

}  // namespace

void save_model(const Model& model, const std::filesystem::path& path) {
  const Params& p = model.params;
  nlohmann::json j;
  j["params"] = {{"para_dim", p.para_dim},
                 {"word_dim", p.word_dim},
                 {"window", p.window},
                 {"learning_rate", p.learning_rate},
                 {"min_learning_rate", p.min_learning_rate},
                 {"epochs", p.epochs},
                 {"infer_epochs", p.infer_epochs},
                 {"mode", std::string(to_string(p.mode))},
                 {"combine", std::string(to_string(p.combine))},
                 {"seed", p.seed},
                 {"min_count", p.min_count}};
  j["words"] = model.words;
  j["counts"] = model.counts;
  auto codes = nlohmann::json::array();
  for (const auto& path_ : model.tree.paths()) {
    std::string bits;
    for (auto b : path_.bits) bits.push_back(b ? '1' : '0');
    codes.push_back({{"code", bits}, {"nodes", path_.nodes}});
  }
  j["huffman"] = std::move(codes);
  j["doc_ids"] = model.doc_ids;
  j["trained"] = model.trained;
  j["D"] = matrix_json(model.doc_vectors);
  j["W"] = matrix_json(model.word_vectors);
  j["U"] = matrix_json(model.softmax_weights);
  j["b"] = model.softmax_bias;
  j["epoch_loss"] = model.epoch_loss;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << j.dump() << '\n';
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  try {
    const auto j = nlohmann::json::parse(in);
    Model m;
    const auto& jp = j.at("params");
    m.params.para_dim = jp.at("para_dim").get<std::size_t>();
    m.params.word_dim = jp.at("word_dim").get<std::size_t>();
    m.params.window = jp.at("window").get<std::size_t>();
    m.params.learning_rate = jp.at("learning_rate").get<double>();
    m.params.min_learning_rate = jp.at("min_learning_rate").get<double>();
    m.params.epochs = jp.at("epochs").get<int>();
    m.params.infer_epochs = jp.at("infer_epochs").get<int>();
    m.params.mode = parse_mode(jp.at("mode").get<std::string>());
    m.params.combine = parse_combine(jp.at("combine").get<std::string>());
    m.params.seed = jp.at("seed").get<std::uint64_t>();
    m.params.min_count = jp.at("min_count").get<std::size_t>();
    m.words = j.at("words").get<std::vector<std::string>>();
    m.counts = j.at("counts").get<std::vector<std::size_t>>();
    std::vector<HuffmanTree::Path> paths;
    for (const auto& c : j.at("huffman")) {
      HuffmanTree::Path p;
      for (char ch : c.at("code").get<std::string>()) p.bits.push_back(ch == '1' ? 1 : 0);
      p.nodes = c.at("nodes").get<std::vector<std::uint32_t>>();
      paths.push_back(std::move(p));
    }
    m.tree = HuffmanTree::from_paths(std::move(paths));
    m.doc_ids = j.at("doc_ids").get<std::vector<std::string>>();
    m.trained = j.at("trained").get<std::vector<bool>>();
    m.doc_vectors = matrix_from(j.at("D"));
    m.word_vectors = matrix_from(j.at("W"));
    m.softmax_weights = matrix_from(j.at("U"));
    m.softmax_bias = j.at("b").get<std::vector<double>>();
    m.epoch_loss = j.value("epoch_loss", std::vector<double>{});
    m.skipped_documents = static_cast<std::size_t>(std::count(m.trained.begin(), m.trained.end(), false));
    if (m.tree.leaf_count() != m.words.size()) throw FormatError("Huffman tree does not match vocabulary");
    m.rebuild_index();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace clusart::pvec
