#include "clusart/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "clusart/error.hpp"
#include "clusart/random.hpp"
#include "clusart/utf8.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace clusart {

std::string_view to_string(Split split) {
  return split == Split::kTrain ? "train" : "test";
}

Split parse_split(std::string_view text) {
  if (text == "train") return Split::kTrain;
  if (text == "test") return Split::kTest;
  throw FormatError("unknown split tag '" + std::string(text) + "'");
}

Corpus::Corpus(std::vector<Document> documents) : documents_(std::move(documents)) {
  std::unordered_set<std::string> ids;
  for (const auto& doc : documents_) {
    if (doc.id.empty()) throw DomainError("document with empty id");
    if (!ids.insert(doc.id).second) throw DomainError("duplicate document id '" + doc.id + "'");
    if (doc.gold_label) labels_.insert(*doc.gold_label);
  }
}

std::vector<const Document*> Corpus::with_split(Split split) const {
  std::vector<const Document*> out;
  for (const auto& doc : documents_) {
    if (doc.split == split) out.push_back(&doc);
  }
  return out;
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

std::string strip_header_block(std::string_view text) {
  // Headers end at the first empty line ("\n\n", tolerating CRLF).
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) return {};
    std::string_view line = text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = eol + 1;
    if (line.empty()) return std::string(text.substr(pos));
  }
  return {};
}

struct FileEntry {
  std::string id;
  std::string label;
  fs::path path;
};

std::vector<FileEntry> list_tree(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) {
    throw IoError("'" + root.string() + "' is not a readable directory");
  }
  std::vector<FileEntry> entries;
  for (const auto& topic : fs::directory_iterator(root)) {
    if (!topic.is_directory()) continue;
    const std::string label = topic.path().filename().string();
    for (const auto& file : fs::directory_iterator(topic.path())) {
      if (!file.is_regular_file()) continue;
      entries.push_back({label + "/" + file.path().filename().string(), label, file.path()});
    }
  }
  std::sort(entries.begin(), entries.end(),
            [](const FileEntry& a, const FileEntry& b) { return a.id < b.id; });
  return entries;
}

std::vector<Document> read_entries(const std::vector<FileEntry>& entries,
                                   const LoadOptions& options, std::optional<Split> split,
                                   std::size_t& warnings) {
  std::vector<Document> docs(entries.size());
  std::vector<std::size_t> replaced(entries.size(), 0);
  std::string first_error;
  bool failed = false;

#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(entries.size()); ++i) {
    try {
      std::string raw = read_file(entries[i].path);
      std::string text = repair_utf8(raw, replaced[i]);
      if (options.strip_headers) text = strip_header_block(text);
      docs[i] = Document{entries[i].id, std::move(text), entries[i].label, split};
    } catch (const Error& e) {
#pragma omp critical(clusart_load_error)
      if (!failed) {
        failed = true;
        first_error = e.what();
      }
    }
  }
  if (failed) throw IoError(first_error);
  warnings += std::accumulate(replaced.begin(), replaced.end(), std::size_t{0});
  return docs;
}

}  // namespace

Corpus load_newsgroups_dir(const fs::path& root, const LoadOptions& options) {
  const auto entries = list_tree(root);
  if (entries.empty()) throw EmptyCorpusError("no documents found under '" + root.string() + "'");
  std::size_t warnings = 0;
  Corpus corpus(read_entries(entries, options, std::nullopt, warnings));
  corpus.set_decode_warnings(warnings);
  return corpus;
}

Corpus load_newsgroups_split_dirs(const fs::path& train_root, const fs::path& test_root,
                                  const LoadOptions& options) {
  const auto train = list_tree(train_root);
  const auto test = list_tree(test_root);
  if (train.empty() && test.empty()) {
    throw EmptyCorpusError("no documents found under '" + train_root.string() + "' or '" +
                           test_root.string() + "'");
  }
  std::size_t warnings = 0;
  auto docs = read_entries(train, options, Split::kTrain, warnings);
  auto test_docs = read_entries(test, options, Split::kTest, warnings);
  docs.insert(docs.end(), std::make_move_iterator(test_docs.begin()),
              std::make_move_iterator(test_docs.end()));
  std::stable_sort(docs.begin(), docs.end(),
                   [](const Document& a, const Document& b) { return a.id < b.id; });
  Corpus corpus(std::move(docs));
  corpus.set_decode_warnings(warnings);
  return corpus;
}

Corpus split_corpus(const Corpus& corpus, const PredefinedSplit&) {
  for (const auto& doc : corpus.documents()) {
    if (!doc.split) {
      throw ParameterError("predefined split requested but document '" + doc.id +
                           "' has no split tag; load separate train/test trees");
    }
  }
  return corpus;
}

Corpus split_corpus(const Corpus& corpus, const RandomSplit& strategy) {
  if (!(strategy.ratio > 0.0 && strategy.ratio < 1.0)) {
    throw ParameterError("split ratio must lie in (0, 1), got " + std::to_string(strategy.ratio));
  }
  // Group document indices per label; unlabeled documents form their own stratum.
  std::map<std::string, std::vector<std::size_t>> strata;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& label = corpus[i].gold_label;
    strata[label ? "L:" + *label : std::string("U")].push_back(i);
  }

  // Per-stratum train counts: floor of the exact share, then the remaining
  // documents go to the strata with the largest fractional parts (ties by key).
  const auto total = static_cast<double>(corpus.size());
  const auto target = static_cast<std::size_t>(std::llround(strategy.ratio * total));
  std::vector<std::pair<std::string, double>> fractions;
  std::map<std::string, std::size_t> quota;
  std::size_t assigned = 0;
  for (const auto& [key, members] : strata) {
    const double exact = strategy.ratio * static_cast<double>(members.size());
    const auto base = static_cast<std::size_t>(std::floor(exact));
    quota[key] = base;
    assigned += base;
    fractions.emplace_back(key, exact - static_cast<double>(base));
  }
  std::stable_sort(fractions.begin(), fractions.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  for (std::size_t i = 0; assigned < target && i < fractions.size(); ++i, ++assigned) {
    ++quota[fractions[i].first];
  }

  std::vector<Document> docs = corpus.documents();
  Rng rng(strategy.seed);
  for (auto& [key, members] : strata) {
    // Fisher-Yates on a copy so document order itself never changes.
    std::vector<std::size_t> order = members;
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[rng.below(i)]);
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
      docs[order[i]].split = i < quota[key] ? Split::kTrain : Split::kTest;
    }
  }
  Corpus out(std::move(docs));
  out.set_decode_warnings(corpus.decode_warnings());
  return out;
}

void save_manifest(const Corpus& corpus, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  for (const auto& doc : corpus.documents()) {
    json row;
    row["id"] = doc.id;
    row["label"] = doc.gold_label ? json(*doc.gold_label) : json(nullptr);
    row["split"] = doc.split ? json(std::string(to_string(*doc.split))) : json(nullptr);
    row["text"] = doc.text;
    out << row.dump() << '\n';
  }
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

Corpus load_manifest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::vector<Document> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const json row = json::parse(line);
      Document doc;
      doc.id = row.at("id").get<std::string>();
      doc.text = row.at("text").get<std::string>();
      if (row.contains("label") && !row["label"].is_null()) doc.gold_label = row["label"].get<std::string>();
      if (row.contains("split") && !row["split"].is_null()) doc.split = parse_split(row["split"].get<std::string>());
      docs.push_back(std::move(doc));
    } catch (const json::exception& e) {
      throw FormatError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (docs.empty()) throw EmptyCorpusError("manifest '" + path.string() + "' holds no documents");
  return Corpus(std::move(docs));
}

}  // namespace clusart
