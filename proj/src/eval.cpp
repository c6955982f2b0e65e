#include "clusart/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "clusart/error.hpp"
#include "clusart/pvec.hpp"

namespace clusart::eval {

ClusterLabelMap map_clusters_majority(std::span<const std::size_t> categories,
                                      std::span<const std::string> gold) {
  if (categories.size() != gold.size()) throw DomainError("assignments and gold labels differ in length");
  std::map<std::size_t, std::map<std::string, std::size_t>> votes;
  for (std::size_t i = 0; i < categories.size(); ++i) ++votes[categories[i]][gold[i]];

  ClusterLabelMap out;
  std::size_t mapped = 0;
  for (const auto& [cat, counts] : votes) {
    // std::map iterates labels in ascending order, so the first maximum wins ties.
    const auto best = std::max_element(counts.begin(), counts.end(),
                                       [](const auto& a, const auto& b) { return a.second < b.second; });
    out.labels[cat] = best->first;
    for (const auto& [label, n] : counts) mapped += n;
  }
  out.coverage = categories.empty() ? 0.0 : static_cast<double>(mapped) / static_cast<double>(categories.size());
  return out;
}

double f_measure(double precision, double recall) {
  const double sum = precision + recall;
  return sum > 0.0 ? 2.0 * precision * recall / sum : 0.0;
}

Report prf(std::span<const std::string> predicted, std::span<const std::string> gold) {
  if (predicted.size() != gold.size()) {
    throw DomainError("prf: " + std::to_string(predicted.size()) + " predictions for " +
                      std::to_string(gold.size()) + " gold labels");
  }
  Report r;
  std::map<std::string, std::size_t> tp, pred_count, gold_count;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    ++r.confusion[gold[i]][predicted[i]];
    ++pred_count[predicted[i]];
    ++gold_count[gold[i]];
    if (predicted[i] == gold[i]) {
      ++tp[gold[i]];
      ++correct;
    }
  }
  for (const auto& [label, support] : gold_count) {
    LabelScores s;
    s.support = support;
    s.predicted = pred_count[label];
    const double hits = static_cast<double>(tp[label]);
    s.precision = s.predicted ? hits / static_cast<double>(s.predicted) : 0.0;
    s.recall = hits / static_cast<double>(support);
    s.f_measure = f_measure(s.precision, s.recall);
    r.per_label[label] = s;
    r.macro_precision += s.precision;
    r.macro_recall += s.recall;
    r.macro_f += s.f_measure;
  }
  if (!r.per_label.empty()) {
    const auto n = static_cast<double>(r.per_label.size());
    r.macro_precision /= n;
    r.macro_recall /= n;
    r.macro_f /= n;
  }
  if (!gold.empty()) {
    // Single-label predictions: micro precision and recall both equal accuracy.
    r.micro_precision = static_cast<double>(correct) / static_cast<double>(predicted.size());
    r.micro_recall = static_cast<double>(correct) / static_cast<double>(gold.size());
    r.micro_f = f_measure(r.micro_precision, r.micro_recall);
  }
  return r;
}

namespace {

void check_grid(std::span<const double> grid) {
  if (grid.empty()) throw ParameterError("vigilance grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0 && grid[i] <= 1.0)) {
      throw ParameterError("vigilance grid values must lie in [0, 1]");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) throw ParameterError("vigilance grid must be ascending");
  }
}

SweepRow sweep_point(std::span<const DocVector> vectors, fuzzyart::Params params, double rho) {
  params.rho = rho;
  const auto result = fuzzyart::train(vectors, params);
  return {rho, result.model.category_count()};
}

struct Neighbour {
  double similarity;
  std::size_t index;
};

std::vector<Neighbour> nearest(std::span<const DocVector> train, std::span<const double> query,
                               std::size_t k) {
  std::vector<Neighbour> all;
  all.reserve(train.size());
  for (std::size_t i = 0; i < train.size(); ++i) {
    all.push_back({pvec::cosine(train[i].values, query), i});
  }
  const auto by_rank = [](const Neighbour& a, const Neighbour& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.index < b.index;
  };
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(), by_rank);
  all.resize(k);
  return all;
}

}  // namespace

std::vector<SweepRow> vigilance_sweep(std::span<const DocVector> vectors,
                                      const fuzzyart::Params& params,
                                      std::span<const double> rho_grid) {
  check_grid(rho_grid);
  std::vector<SweepRow> rows(rho_grid.size());
  std::string error;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(rho_grid.size()); ++i) {
    try {
      rows[i] = sweep_point(vectors, params, rho_grid[i]);
    } catch (const std::exception& e) {
#pragma omp critical(clusart_sweep_error)
      if (error.empty()) error = e.what();
    }
  }
  if (!error.empty()) throw ParameterError(error);
  return rows;
}

std::string knn_predict(std::span<const DocVector> train, std::span<const std::string> labels,
                        std::span<const double> query, std::size_t k) {
  if (train.empty()) throw ParameterError("kNN needs a non-empty training set");
  if (labels.size() != train.size()) throw DomainError("kNN: labels and training vectors differ in length");
  if (k < 1 || k > train.size()) {
    throw ParameterError("kNN: k must lie in [1, " + std::to_string(train.size()) + "], got " +
                         std::to_string(k));
  }
  struct Vote {
    std::size_t count = 0;
    double distance = 0.0;
  };
  std::map<std::string, Vote> votes;
  for (const auto& n : nearest(train, query, k)) {
    auto& v = votes[labels[n.index]];
    ++v.count;
    v.distance += 1.0 - n.similarity;
  }
  auto best = votes.begin();
  for (auto it = std::next(votes.begin()); it != votes.end(); ++it) {
    if (it->second.count > best->second.count ||
        (it->second.count == best->second.count && it->second.distance < best->second.distance)) {
      best = it;
    }
  }
  return best->first;
}

std::vector<std::string> knn_predict_batch(std::span<const DocVector> train,
                                           std::span<const std::string> labels,
                                           std::span<const DocVector> queries, std::size_t k) {
  if (train.empty()) throw ParameterError("kNN needs a non-empty training set");
  if (k < 1 || k > train.size()) throw ParameterError("kNN: k out of range");
  std::vector<std::string> out(queries.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(queries.size()); ++i) {
    out[i] = knn_predict(train, labels, queries[i].values, k);
  }
  return out;
}

namespace reference {

std::vector<SweepRow> vigilance_sweep(std::span<const DocVector> vectors,
                                      const fuzzyart::Params& params,
                                      std::span<const double> rho_grid) {
  check_grid(rho_grid);
  std::vector<SweepRow> rows;
  for (double rho : rho_grid) rows.push_back(sweep_point(vectors, params, rho));
  return rows;
}

std::vector<std::string> knn_predict_batch(std::span<const DocVector> train,
                                           std::span<const std::string> labels,
                                           std::span<const DocVector> queries, std::size_t k) {
  std::vector<std::string> out;
  for (const auto& q : queries) out.push_back(knn_predict(train, labels, q.values, k));
  return out;
}

}  // namespace reference

void save_sweep(std::span<const SweepRow> rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << "rho,categories\n";
  char buf[32];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.10g", r.rho);
    out << buf << ',' << r.categories << '\n';
  }
}

nlohmann::json to_json(const Report& report) {
  nlohmann::json j;
  auto per = nlohmann::json::object();
  for (const auto& [label, s] : report.per_label) {
    per[label] = {{"precision", s.precision},
                  {"recall", s.recall},
                  {"f_measure", s.f_measure},
                  {"support", s.support},
                  {"predicted", s.predicted}};
  }
  j["per_label"] = std::move(per);
  j["macro"] = {{"precision", report.macro_precision},
                {"recall", report.macro_recall},
                {"f_measure", report.macro_f}};
  j["micro"] = {{"precision", report.micro_precision},
                {"recall", report.micro_recall},
                {"f_measure", report.micro_f}};
  j["confusion"] = report.confusion;
  return j;
}

nlohmann::json to_json(const ClusterLabelMap& map) {
  auto labels = nlohmann::json::object();
  for (const auto& [cat, label] : map.labels) labels[std::to_string(cat)] = label;
  return {{"labels", std::move(labels)}, {"coverage", map.coverage}};
}

std::vector<double> parse_grid(const std::string& spec) {
  double start = 0, stop = 0, step = 0;
  char tail = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%lf%c", &start, &stop, &step, &tail) != 3) {
    throw ParameterError("grid must look like start:stop:step, got '" + spec + "'");
  }
  if (!(step > 0.0)) throw ParameterError("grid step must be > 0");
  if (stop < start) throw ParameterError("grid stop must be >= start");
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> grid;
  for (std::size_t i = 0; i < count; ++i) {
    // Snap to 1e-12 so 0.1 + 2 * 0.1 reads back as 0.3.
    grid.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
  }
  return grid;
}

}  // namespace clusart::eval
