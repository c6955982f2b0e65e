#include "clusart/huffman.hpp"

#include <algorithm>
#include <queue>
#include <tuple>

#include "clusart/error.hpp"

namespace clusart::pvec {

HuffmanTree HuffmanTree::from_counts(std::span<const std::size_t> counts) {
  const std::size_t v = counts.size();
  if (v < 2) {
    throw DegenerateVocabularyError("a Huffman tree needs at least 2 distinct words, got " +
                                    std::to_string(v));
  }
  // Node ids: leaves 0..v-1, inner nodes v..2v-2. Heap key (weight, id)
  // gives the deterministic tie-break.
  using Item = std::pair<std::size_t, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (std::size_t i = 0; i < v; ++i) heap.emplace(counts[i], i);

  std::vector<std::size_t> parent(2 * v - 1, 0);
  std::vector<std::uint8_t> branch(2 * v - 1, 0);
  std::size_t next = v;
  while (heap.size() > 1) {
    const auto [w0, a] = heap.top();
    heap.pop();
    const auto [w1, b] = heap.top();
    heap.pop();
    parent[a] = next;
    branch[a] = 0;
    parent[b] = next;
    branch[b] = 1;
    heap.emplace(w0 + w1, next);
    ++next;
  }
  const std::size_t root = 2 * v - 2;

  HuffmanTree tree;
  tree.paths_.resize(v);
  for (std::size_t leaf = 0; leaf < v; ++leaf) {
    Path& p = tree.paths_[leaf];
    for (std::size_t node = leaf; node != root; node = parent[node]) {
      p.bits.push_back(branch[node]);
      p.nodes.push_back(static_cast<std::uint32_t>(parent[node] - v));
    }
    std::reverse(p.bits.begin(), p.bits.end());
    std::reverse(p.nodes.begin(), p.nodes.end());
  }
  return tree;
}

HuffmanTree HuffmanTree::from_paths(std::vector<Path> paths) {
  if (paths.size() < 2) throw DegenerateVocabularyError("a Huffman tree needs at least 2 leaves");
  for (const auto& p : paths) {
    if (p.bits.size() != p.nodes.size() || p.bits.empty()) throw FormatError("malformed Huffman path");
    for (auto n : p.nodes) {
      if (n >= paths.size() - 1) throw FormatError("Huffman inner node id out of range");
    }
  }
  HuffmanTree tree;
  tree.paths_ = std::move(paths);
  return tree;
}

double HuffmanTree::expected_code_length(std::span<const std::size_t> counts) const {
  double total = 0.0, weighted = 0.0;
  for (std::size_t i = 0; i < counts.size() && i < paths_.size(); ++i) {
    total += static_cast<double>(counts[i]);
    weighted += static_cast<double>(counts[i]) * static_cast<double>(paths_[i].bits.size());
  }
  return total > 0.0 ? weighted / total : 0.0;
}

HuffmanTree build_huffman(const std::map<std::string, std::size_t>& word_freqs) {
  std::vector<std::size_t> counts;
  counts.reserve(word_freqs.size());
  for (const auto& [word, count] : word_freqs) counts.push_back(count);
  return HuffmanTree::from_counts(counts);
}

}  // namespace clusart::pvec
