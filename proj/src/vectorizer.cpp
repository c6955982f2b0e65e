#include "clusart/vectorizer.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "clusart/error.hpp"
#include "csv.hpp"

namespace clusart {

std::ptrdiff_t Vocabulary::index_of(const std::string& term) const {
  const auto it = index_.find(term);
  return it == index_.end() ? -1 : static_cast<std::ptrdiff_t>(it->second);
}

void Vocabulary::rebuild_index() {
  index_.clear();
  for (std::size_t i = 0; i < terms.size(); ++i) index_.emplace(terms[i], i);
}

namespace {

struct TermCounts {
  std::size_t collection = 0;
  std::size_t documents = 0;
};

using CountTable = std::unordered_map<std::string, TermCounts>;

void count_document(const TokenizedDoc& doc, CountTable& table) {
  std::unordered_map<std::string_view, std::size_t> local;
  for (const auto& t : doc.tokens) ++local[t];
  for (const auto& [term, count] : local) {
    auto& entry = table[std::string(term)];
    entry.collection += count;
    entry.documents += 1;
  }
}

Vocabulary select_top(const CountTable& table, std::size_t corpus_size, std::size_t n) {
  if (table.empty()) throw EmptyVocabularyError("all documents are empty; no vocabulary to build");
  std::vector<std::pair<std::string, TermCounts>> ranked(table.begin(), table.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second.collection != b.second.collection) return a.second.collection > b.second.collection;
    return a.first < b.first;
  });
  if (ranked.size() > n) ranked.resize(n);
  Vocabulary vocab;
  vocab.corpus_size = corpus_size;
  vocab.requested_size = n;
  for (auto& [term, counts] : ranked) {
    vocab.terms.push_back(term);
    vocab.collection_freq.push_back(counts.collection);
    vocab.doc_freq.push_back(counts.documents);
  }
  vocab.rebuild_index();
  return vocab;
}

void check_n(std::size_t n) {
  if (n == 0) throw ParameterError("vocabulary size n must be >= 1");
}

std::vector<double> idf_weights(const Vocabulary& vocab) {
  std::vector<double> idf(vocab.size());
  const auto total = static_cast<double>(vocab.corpus_size);
  for (std::size_t k = 0; k < vocab.size(); ++k) {
    idf[k] = std::log(total / static_cast<double>(vocab.doc_freq[k]));
  }
  return idf;
}

std::vector<double> tfidf_with(const TokenizedDoc& doc, const Vocabulary& vocab,
                               const std::vector<double>& idf) {
  std::vector<double> counts(vocab.size(), 0.0);
  for (const auto& t : doc.tokens) {
    const auto k = vocab.index_of(t);
    if (k >= 0) counts[static_cast<std::size_t>(k)] += 1.0;
  }
  for (std::size_t k = 0; k < counts.size(); ++k) counts[k] *= idf[k];
  return counts;
}

}  // namespace

Vocabulary build_vocabulary(std::span<const TokenizedDoc* const> docs, std::size_t n) {
  check_n(n);
  CountTable merged;
#pragma omp parallel
  {
    CountTable local;
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(docs.size()); ++i) {
      count_document(*docs[i], local);
    }
    // Integer sums commute, so merge order does not affect the result.
#pragma omp critical(clusart_vocab_merge)
    for (auto& [term, counts] : local) {
      auto& entry = merged[term];
      entry.collection += counts.collection;
      entry.documents += counts.documents;
    }
  }
  return select_top(merged, docs.size(), n);
}

Vocabulary build_vocabulary(std::span<const TokenizedDoc> docs, std::size_t n) {
  std::vector<const TokenizedDoc*> ptrs;
  ptrs.reserve(docs.size());
  for (const auto& d : docs) ptrs.push_back(&d);
  return build_vocabulary(std::span<const TokenizedDoc* const>(ptrs), n);
}

std::vector<double> tfidf_vector(const TokenizedDoc& doc, const Vocabulary& vocab) {
  return tfidf_with(doc, vocab, idf_weights(vocab));
}

std::vector<std::vector<double>> tfidf_matrix(std::span<const TokenizedDoc* const> docs,
                                              const Vocabulary& vocab) {
  const auto idf = idf_weights(vocab);
  std::vector<std::vector<double>> rows(docs.size());
#pragma omp parallel for schedule(dynamic, 32)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(docs.size()); ++i) {
    rows[i] = tfidf_with(*docs[i], vocab, idf);
  }
  return rows;
}

namespace reference {

std::vector<std::vector<double>> tfidf_matrix(std::span<const TokenizedDoc* const> docs,
                                              const Vocabulary& vocab) {
  const auto total = static_cast<double>(vocab.corpus_size);
  std::vector<std::vector<double>> rows;
  for (const auto* doc : docs) {
    std::vector<double> row(vocab.size(), 0.0);
    for (std::size_t k = 0; k < vocab.size(); ++k) {
      const auto tf = static_cast<double>(
          std::count(doc->tokens.begin(), doc->tokens.end(), vocab.terms[k]));
      row[k] = tf * std::log(total / static_cast<double>(vocab.doc_freq[k]));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Vocabulary build_vocabulary(std::span<const TokenizedDoc* const> docs, std::size_t n) {
  check_n(n);
  CountTable table;
  for (const auto* doc : docs) count_document(*doc, table);
  return select_top(table, docs.size(), n);
}

}  // namespace reference

ScalingRecord fit_scaling(std::span<const std::vector<double>> raw_training) {
  ScalingRecord rec;
  if (raw_training.empty()) throw ParameterError("scaling needs at least one training vector");
  rec.maxima.assign(raw_training.front().size(), 0.0);
  for (const auto& row : raw_training) {
    if (row.size() != rec.maxima.size()) throw DomainError("ragged raw vector set");
    for (std::size_t k = 0; k < row.size(); ++k) rec.maxima[k] = std::max(rec.maxima[k], row[k]);
  }
  return rec;
}

std::vector<double> apply_scaling(std::span<const double> raw, const ScalingRecord& scaling) {
  if (raw.size() != scaling.maxima.size()) {
    throw DomainError("vector length " + std::to_string(raw.size()) +
                      " does not match scaling record " + std::to_string(scaling.maxima.size()));
  }
  std::vector<double> out(raw.size(), 0.0);
  for (std::size_t k = 0; k < raw.size(); ++k) {
    if (scaling.maxima[k] > 0.0) out[k] = std::clamp(raw[k] / scaling.maxima[k], 0.0, 1.0);
  }
  return out;
}

ScaledSplit scale_to_unit_interval(std::span<const std::vector<double>> raw_training,
                                   std::span<const std::string> doc_ids) {
  if (doc_ids.size() != raw_training.size()) throw DomainError("doc id count does not match vectors");
  ScaledSplit out;
  out.scaling = fit_scaling(raw_training);
  out.vectors.reserve(raw_training.size());
  for (std::size_t i = 0; i < raw_training.size(); ++i) {
    out.vectors.push_back({doc_ids[i], apply_scaling(raw_training[i], out.scaling)});
  }
  return out;
}

void save_vocabulary(const Vocabulary& vocab, const ScalingRecord& scaling,
                     const std::filesystem::path& path) {
  nlohmann::json j;
  j["terms"] = vocab.terms;
  j["collection_freq"] = vocab.collection_freq;
  j["doc_freq"] = vocab.doc_freq;
  j["corpus_size"] = vocab.corpus_size;
  j["requested_size"] = vocab.requested_size;
  j["scaling_maxima"] = scaling.maxima;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << j.dump(1) << '\n';
}

std::pair<Vocabulary, ScalingRecord> load_vocabulary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  try {
    const auto j = nlohmann::json::parse(in);
    Vocabulary vocab;
    vocab.terms = j.at("terms").get<std::vector<std::string>>();
    vocab.doc_freq = j.at("doc_freq").get<std::vector<std::size_t>>();
    vocab.corpus_size = j.at("corpus_size").get<std::size_t>();
    vocab.collection_freq = j.value("collection_freq", std::vector<std::size_t>(vocab.terms.size(), 0));
    vocab.requested_size = j.value("requested_size", vocab.terms.size());
    if (vocab.doc_freq.size() != vocab.terms.size()) throw FormatError("doc_freq length mismatch");
    vocab.rebuild_index();
    ScalingRecord scaling{j.at("scaling_maxima").get<std::vector<double>>()};
    return {std::move(vocab), std::move(scaling)};
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void save_vectors_csv(std::span<const DocVector> vectors, std::size_t dim,
                      const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << "doc_id";
  for (std::size_t k = 0; k < dim; ++k) out << ",f" << k;
  out << '\n';
  for (const auto& v : vectors) {
    if (v.values.size() != dim) throw DomainError("vector '" + v.doc_id + "' has wrong length");
    out << csv::quote(v.doc_id);
    for (double x : v.values) out << ',' << csv::number(x);
    out << '\n';
  }
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::vector<DocVector> load_vectors_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw FormatError(path.string() + ": missing header");
  const auto header = csv::split(line);
  if (header.empty() || header[0] != "doc_id") throw FormatError(path.string() + ": bad header");
  const std::size_t dim = header.size() - 1;
  std::vector<DocVector> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = csv::split(line);
    if (fields.size() != dim + 1) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                        std::to_string(dim + 1) + " fields");
    }
    DocVector v{std::move(fields[0]), std::vector<double>(dim)};
    for (std::size_t k = 0; k < dim; ++k) {
      const auto& f = fields[k + 1];
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v.values[k]);
      if (ec != std::errc() || ptr != f.data() + f.size()) {
        throw FormatError(path.string() + ":" + std::to_string(line_no) + ": bad number '" + f + "'");
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace clusart
