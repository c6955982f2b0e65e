#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace clusart {

enum class Split { kTrain, kTest };

std::string_view to_string(Split split);
Split parse_split(std::string_view text);

struct Document {
  std::string id;
  std::string text;
  std::optional<std::string> gold_label;
  std::optional<Split> split;

  friend bool operator==(const Document&, const Document&) = default;
};

// An ordered, immutable-after-load collection of documents.
class Corpus {
 public:
  Corpus() = default;
  // Documents are kept in the given order; ids must be unique and non-empty.
  explicit Corpus(std::vector<Document> documents);

  const std::vector<Document>& documents() const { return documents_; }
  const std::set<std::string>& labels() const { return labels_; }
  std::size_t size() const { return documents_.size(); }
  bool empty() const { return documents_.empty(); }
  const Document& operator[](std::size_t i) const { return documents_[i]; }

  // Number of byte sequences replaced by U+FFFD while loading.
  std::size_t decode_warnings() const { return decode_warnings_; }
  void set_decode_warnings(std::size_t n) { decode_warnings_ = n; }

  std::vector<const Document*> with_split(Split split) const;

  friend bool operator==(const Corpus& a, const Corpus& b) {
    return a.documents_ == b.documents_;
  }

 private:
  std::vector<Document> documents_;
  std::set<std::string> labels_;
  std::size_t decode_warnings_ = 0;
};

struct LoadOptions {
  // Drop every line up to and including the first blank line (mail headers).
  bool strip_headers = false;
};

// Each immediate subdirectory of `root` is a topic; each regular file in it is
// one document with id "<subdir>/<filename>". Documents are sorted bytewise by id.
Corpus load_newsgroups_dir(const std::filesystem::path& root,
                           const LoadOptions& options = {});

// Loads two trees laid out like load_newsgroups_dir and tags every document
// with the split of the tree it came from. Ids must not collide across trees.
Corpus load_newsgroups_split_dirs(const std::filesystem::path& train_root,
                                  const std::filesystem::path& test_root,
                                  const LoadOptions& options = {});

struct PredefinedSplit {};
struct RandomSplit {
  double ratio = 0.7;  // fraction of each label assigned to train
  std::uint64_t seed = 1;
};

// Predefined: every document must already carry a split tag. Random: a
// stratified split, deterministic in `seed`.
Corpus split_corpus(const Corpus& corpus, const PredefinedSplit&);
Corpus split_corpus(const Corpus& corpus, const RandomSplit& strategy);

// JSON Lines manifest: {"id", "label", "split", "text"} per line.
void save_manifest(const Corpus& corpus, const std::filesystem::path& path);
Corpus load_manifest(const std::filesystem::path& path);

}  // namespace clusart
