#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace clusart::pvec {

// Binary Huffman tree over a vocabulary. Leaves are numbered 0..V-1 in the
// order of the input counts; inner nodes 0..V-2 in creation order (the root
// is V-2). Each leaf stores its root-to-leaf path.
class HuffmanTree {
 public:
  struct Path {
    std::vector<std::uint32_t> nodes;  // inner node ids, root first
    std::vector<std::uint8_t> bits;    // 0 = first-merged child, 1 = second
  };

  HuffmanTree() = default;

  // Builds from per-leaf counts. Ties in the merge order are broken by leaf
  // index (leaves before inner nodes, older inner nodes first).
  static HuffmanTree from_counts(std::span<const std::size_t> counts);

  // Rebuilds from stored paths (persistence).
  static HuffmanTree from_paths(std::vector<Path> paths);

  std::size_t leaf_count() const { return paths_.size(); }
  std::size_t inner_count() const { return paths_.empty() ? 0 : paths_.size() - 1; }
  const Path& path(std::size_t leaf) const { return paths_[leaf]; }
  const std::vector<Path>& paths() const { return paths_; }

  // sum_i counts[i] * |code_i| / sum_i counts[i]
  double expected_code_length(std::span<const std::size_t> counts) const;

 private:
  std::vector<Path> paths_;
};

// Leaves are ordered lexicographically by term (map order), which also
// fixes the tie-breaking.
HuffmanTree build_huffman(const std::map<std::string, std::size_t>& word_freqs);

}  // namespace clusart::pvec
