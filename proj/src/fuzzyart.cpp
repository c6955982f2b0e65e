#include "clusart/fuzzyart.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>

#include <json.hpp>

#include "clusart/error.hpp"
#include "csv.hpp"

namespace clusart::fuzzyart {

std::string_view to_string(InputMode mode) {
  return mode == InputMode::kComplementCoding ? "complement_coding" : "l1_normalization";
}

InputMode parse_input_mode(std::string_view text) {
  if (text == "complement_coding") return InputMode::kComplementCoding;
  if (text == "l1_normalization") return InputMode::kL1Normalization;
  throw ParameterError("input mode must be complement_coding or l1_normalization, got '" +
                       std::string(text) + "'");
}

void Params::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ParameterError("alpha must be > 0, got " + std::to_string(alpha));
  }
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw ParameterError("beta must lie in [0, 1], got " + std::to_string(beta));
  }
  if (!(rho >= 0.0 && rho <= 1.0)) {
    throw ParameterError("rho must lie in [0, 1], got " + std::to_string(rho));
  }
  if (max_epochs < 1) throw ParameterError("max_epochs must be >= 1");
}

std::vector<double> complement_code(std::span<const double> a) {
  const std::size_t m = a.size();
  std::vector<double> out(2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!(a[i] >= 0.0 && a[i] <= 1.0)) {
      throw DomainError("complement coding needs components in [0,1]; component " +
                        std::to_string(i) + " is " + std::to_string(a[i]));
    }
    out[i] = a[i];
    out[m + i] = 1.0 - a[i];
  }
  return out;
}

std::vector<double> l1_normalize(std::span<const double> a) {
  const double norm = l1_norm(a);
  if (!(norm > 0.0)) throw DomainError("cannot L1-normalize a zero vector");
  std::vector<double> out(a.begin(), a.end());
  for (auto& x : out) x /= norm;
  return out;
}

std::vector<double> fuzzy_min(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("fuzzy_min: length mismatch");
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::min(x[i], y[i]);
  return out;
}

double l1_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += std::fabs(v);
  return s;
}

double intersection_norm(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DomainError("length mismatch between input and weights");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::min(x[i], y[i]);
  return s;
}

double choice(std::span<const double> input, std::span<const double> w, double alpha) {
  return intersection_norm(input, w) / (alpha + l1_norm(w));
}

double match(std::span<const double> input, std::span<const double> w) {
  const double norm = l1_norm(input);
  if (!(norm > 0.0)) throw DomainError("match: input has zero norm");
  return intersection_norm(input, w) / norm;
}

Model::Model(std::size_t input_dim, Params params)
    : input_dim_(input_dim),
      coded_dim_(params.input_mode == InputMode::kComplementCoding ? 2 * input_dim : input_dim),
      params_(params) {
  params_.validate();
  if (input_dim == 0) throw ParameterError("input dimension must be >= 1");
}

std::span<const double> Model::weights(std::size_t j) const {
  return std::span<const double>(weights_).subspan(j * coded_dim_, coded_dim_);
}

std::vector<double> Model::encode(std::span<const double> raw) const {
  if (raw.size() != input_dim_) {
    throw DomainError("input has dimension " + std::to_string(raw.size()) + ", model expects " +
                      std::to_string(input_dim_));
  }
  if (params_.input_mode == InputMode::kComplementCoding) return complement_code(raw);
  for (double v : raw) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("inputs must lie in [0,1]");
  }
  return l1_normalize(raw);
}

std::vector<double> Model::intersection_norms(std::span<const double> coded) const {
  const auto n = static_cast<std::ptrdiff_t>(category_count());
  const std::size_t dim = coded_dim_;
  std::vector<double> inter(static_cast<std::size_t>(n));
  const double* w = weights_.data();
  const double* in = coded.data();
#pragma omp parallel for schedule(static) if (n * static_cast<std::ptrdiff_t>(dim) > 65536)
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    const double* row = w + static_cast<std::size_t>(j) * dim;
    double s = 0.0;
    for (std::size_t i = 0; i < dim; ++i) s += std::min(in[i], row[i]);
    inter[static_cast<std::size_t>(j)] = s;
  }
  return inter;
}

Presentation Model::search(std::span<const double> coded, bool include_uncommitted,
                           std::vector<double>& inter) const {
  if (coded.size() != coded_dim_) {
    throw DomainError("coded input has dimension " + std::to_string(coded.size()) +
                      ", model expects " + std::to_string(coded_dim_));
  }
  const double input_norm = l1_norm(coded);
  if (!(input_norm > 0.0)) throw DomainError("input has zero norm");

  const std::size_t n = category_count();
  inter = intersection_norms(coded);
  std::vector<double> scores(n + 1, -1.0);
  for (std::size_t j = 0; j < n; ++j) scores[j] = inter[j] / (params_.alpha + norms_[j]);
  // The uncommitted node has w = 1, so |I ^ w| = |I| and |w| = coded_dim.
  if (include_uncommitted) {
    scores[n] = input_norm / (params_.alpha + static_cast<double>(coded_dim_));
  }

  Presentation p;
  for (;;) {
    // argmax with the smallest index winning ties; disqualified nodes sit at -1.
    std::size_t best = 0;
    for (std::size_t j = 1; j <= n; ++j) {
      if (scores[j] > scores[best]) best = j;
    }
    if (scores[best] < 0.0) {
      p.category = n;
      p.novel = true;
      p.choice = -1.0;
      return p;  // nothing resonates (only possible without the uncommitted node)
    }
    if (best == n) {
      p.category = n;
      p.choice = scores[n];
      p.match = 1.0;
      p.novel = true;
      return p;
    }
    const double m = inter[best] / input_norm;
    if (m >= params_.rho) {
      p.category = best;
      p.choice = scores[best];
      p.match = m;
      return p;
    }
    scores[best] = -1.0;
    ++p.resets;
  }
}

Presentation Model::present(std::span<const double> coded, bool learn_enabled) {
  std::vector<double> inter;
  Presentation p = search(coded, true, inter);
  if (!learn_enabled) return p;
  if (p.novel) {
    weights_.resize(weights_.size() + coded_dim_, 1.0);
    norms_.push_back(static_cast<double>(coded_dim_));
  }
  learn(p.category, coded, p.novel);
  return p;
}

std::optional<Presentation> Model::predict(std::span<const double> coded) const {
  std::vector<double> inter;
  Presentation p = search(coded, false, inter);
  if (p.novel) return std::nullopt;
  return p;
}

void Model::learn(std::size_t j, std::span<const double> coded, bool first_commit) {
  const double beta = (first_commit && params_.fast_commit) ? 1.0 : params_.beta;
  double* w = weights_.data() + j * coded_dim_;
  std::vector<double> before;
  if (observer_) before.assign(w, w + coded_dim_);
  // w - beta * (w - min(I, w)) never rounds above w, unlike the expanded form.
  for (std::size_t i = 0; i < coded_dim_; ++i) {
    const double m = std::min(coded[i], w[i]);
    w[i] = beta == 1.0 ? m : w[i] - beta * (w[i] - m);
  }
  norms_[j] = l1_norm(std::span<const double>(w, coded_dim_));
  if (observer_) observer_(j, before, std::span<const double>(w, coded_dim_));
}

void Model::add_category(std::span<const double> w) {
  if (w.size() != coded_dim_) throw DomainError("category weight vector has wrong length");
  for (double v : w) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("category weights must lie in [0,1]");
  }
  weights_.insert(weights_.end(), w.begin(), w.end());
  norms_.push_back(l1_norm(w));
}

std::vector<std::vector<std::size_t>> TrainResult::clusters() const {
  std::vector<std::vector<std::size_t>> out(model.category_count());
  for (std::size_t i = 0; i < assignments.size(); ++i) out[assignments[i].category].push_back(i);
  return out;
}

TrainResult train(std::span<const DocVector> vectors, const Params& params,
                  Model::UpdateObserver observer) {
  params.validate();
  if (vectors.empty()) throw ParameterError("Fuzzy ART training needs at least one input vector");
  const std::size_t dim = vectors.front().values.size();
  Model model(dim, params);
  model.set_observer(std::move(observer));

  std::vector<std::vector<double>> coded;
  coded.reserve(vectors.size());
  for (const auto& v : vectors) coded.push_back(model.encode(v.values));

  TrainResult result{std::move(model), {}, 0, false};
  std::vector<std::size_t> previous;
  std::vector<Assignment> current(vectors.size());
  for (int epoch = 1; epoch <= params.max_epochs; ++epoch) {
    std::vector<std::size_t> labels(vectors.size());
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      const Presentation p = result.model.present(coded[i], true);
      labels[i] = p.category;
      current[i] = {vectors[i].doc_id, p.category, p.choice, p.match};
    }
    result.epochs = epoch;
    if (labels == previous) {
      result.converged = true;
      break;
    }
    previous = std::move(labels);
  }
  result.assignments = std::move(current);
  result.model.set_observer({});
  return result;
}

namespace reference {

std::vector<double> choice_scores(const Model& model, std::span<const double> coded) {
  std::vector<double> out;
  out.reserve(model.category_count());
  for (std::size_t j = 0; j < model.category_count(); ++j) {
    out.push_back(choice(coded, model.weights(j), model.params().alpha));
  }
  return out;
}

}  // namespace reference

void save_model(const Model& model, const std::filesystem::path& path) {
  const auto& p = model.params();
  nlohmann::json j;
  j["alpha"] = p.alpha;
  j["beta"] = p.beta;
  j["rho"] = p.rho;
  j["fast_commit"] = p.fast_commit;
  j["max_epochs"] = p.max_epochs;
  j["input_dim"] = model.input_dim();
  j["input_mode"] = std::string(to_string(p.input_mode));
  auto cats = nlohmann::json::array();
  for (std::size_t c = 0; c < model.category_count(); ++c) {
    const auto w = model.weights(c);
    cats.push_back(std::vector<double>(w.begin(), w.end()));
  }
  j["categories"] = std::move(cats);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << j.dump() << '\n';
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  try {
    const auto j = nlohmann::json::parse(in);
    Params p;
    p.alpha = j.at("alpha").get<double>();
    p.beta = j.at("beta").get<double>();
    p.rho = j.at("rho").get<double>();
    p.fast_commit = j.value("fast_commit", true);
    p.max_epochs = j.value("max_epochs", 50);
    p.input_mode = parse_input_mode(j.at("input_mode").get<std::string>());
    Model model(j.at("input_dim").get<std::size_t>(), p);
    for (const auto& cat : j.at("categories")) model.add_category(cat.get<std::vector<double>>());
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void save_assignments(std::span<const Assignment> assignments, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << "doc_id,category,choice,match\n";
  for (const auto& a : assignments) {
    out << csv::quote(a.doc_id) << ',' << a.category << ',' << csv::number(a.choice) << ','
        << csv::number(a.match) << '\n';
  }
}

std::vector<Assignment> load_assignments(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::string line;
  std::getline(in, line);
  std::vector<Assignment> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = csv::split(line);
    if (f.size() != 4) throw FormatError(path.string() + ": expected 4 fields");
    try {
      out.push_back({f[0], static_cast<std::size_t>(std::stoull(f[1])), std::stod(f[2]),
                     std::stod(f[3])});
    } catch (const std::exception&) {
      throw FormatError(path.string() + ": bad assignment row '" + line + "'");
    }
  }
  return out;
}

}  // namespace clusart::fuzzyart
