#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "eqlearn/core/types.hpp"

namespace eqlearn::clustering {

// Partition of items 0..n-1. Stored as a restricted-growth labelling: blocks
// are numbered in order of their smallest item, which is the canonical form.
class Clustering {
 public:
  Clustering() = default;

  // Accepts any labelling and renumbers it canonically.
  explicit Clustering(const std::vector<int>& labels) : labels_(labels.size()) {
    std::vector<int> seen;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] < 0) throw ConfigError("Clustering: negative block label");
      auto it = std::find(seen.begin(), seen.end(), labels[i]);
      if (it == seen.end()) {
        seen.push_back(labels[i]);
        labels_[i] = static_cast<int>(seen.size()) - 1;
      } else {
        labels_[i] = static_cast<int>(it - seen.begin());
      }
    }
    blocks_ = static_cast<int>(seen.size());
  }

  static Clustering from_blocks(int n, const std::vector<std::vector<int>>& blocks) {
    std::vector<int> labels(static_cast<std::size_t>(n), -1);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (blocks[b].empty()) throw ConfigError("Clustering: empty block");
      for (int x : blocks[b]) {
        if (x < 0 || x >= n || labels[x] != -1) throw ConfigError("Clustering: blocks must partition 0..n-1");
        labels[x] = static_cast<int>(b);
      }
    }
    for (int l : labels)
      if (l == -1) throw ConfigError("Clustering: blocks must cover every item");
    return Clustering(labels);
  }

  static Clustering singletons(int n) {
    std::vector<int> l(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) l[i] = i;
    return Clustering(l);
  }
  static Clustering one_cluster(int n) { return Clustering(std::vector<int>(static_cast<std::size_t>(n), 0)); }

  int size() const { return static_cast<int>(labels_.size()); }
  int block_count() const { return blocks_; }
  int label(int item) const { return labels_[item]; }
  const std::vector<int>& labels() const { return labels_; }
  bool together(int a, int b) const { return labels_[a] == labels_[b]; }

  // Blocks as item bitmasks, canonical order (n <= 64).
  std::vector<std::uint64_t> block_masks() const {
    std::vector<std::uint64_t> out(static_cast<std::size_t>(blocks_), 0);
    for (std::size_t i = 0; i < labels_.size(); ++i) out[labels_[i]] |= std::uint64_t{1} << i;
    return out;
  }

  std::vector<std::vector<int>> blocks() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(blocks_));
    for (std::size_t i = 0; i < labels_.size(); ++i) out[labels_[i]].push_back(static_cast<int>(i));
    return out;
  }

  // Replace blocks a and b by their union.
  Clustering merged(int a, int b) const {
    std::vector<int> l = labels_;
    for (int& x : l)
      if (x == b) x = a;
    return Clustering(l);
  }

  // Every item of block b becomes its own cluster.
  Clustering broken(int b) const {
    std::vector<int> l = labels_;
    int next = blocks_;
    for (int& x : l)
      if (x == b) x = next++;
    return Clustering(l);
  }

  // Items of block b inside `part` move to a new cluster.
  Clustering split(int b, std::uint64_t part) const {
    std::vector<int> l = labels_;
    for (std::size_t i = 0; i < l.size(); ++i)
      if (l[i] == b && ((part >> i) & 1U)) l[i] = blocks_;
    return Clustering(l);
  }

  std::string str() const {
    std::string s;
    for (const auto& b : blocks()) {
      s += '{';
      for (std::size_t k = 0; k < b.size(); ++k) {
        if (k) s += ',';
        s += std::to_string(b[k]);
      }
      s += '}';
    }
    return s;
  }

  friend bool operator==(const Clustering& a, const Clustering& b) { return a.labels_ == b.labels_; }
  friend bool operator<(const Clustering& a, const Clustering& b) { return a.labels_ < b.labels_; }

 private:
  std::vector<int> labels_;
  int blocks_ = 0;
};

// All partitions of n items in lexicographic restricted-growth order.
inline std::vector<Clustering> enumerate_clusterings(int n) {
  if (n < 0 || n > 12) throw ConfigError("enumerate_clusterings: n must lie in 0..12");
  std::vector<Clustering> out;
  std::vector<int> l(static_cast<std::size_t>(n), 0);
  if (n == 0) return {Clustering(l)};
  // Odometer over restricted-growth strings: l[i] <= 1 + max(l[0..i-1]).
  while (true) {
    out.emplace_back(l);
    int i = n - 1;
    for (; i > 0; --i) {
      int top = *std::max_element(l.begin(), l.begin() + i);
      if (l[i] <= top) {
        ++l[i];
        std::fill(l.begin() + i + 1, l.end(), 0);
        break;
      }
    }
    if (i == 0) break;
  }
  return out;
}

inline std::size_t bell_number(int n) {
  std::vector<std::size_t> row{1};
  for (int i = 0; i < n; ++i) {
    std::vector<std::size_t> next{row.back()};
    for (std::size_t v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

inline void check_same_items(const Clustering& a, const Clustering& b) {
  if (a.size() != b.size()) throw ConfigError("clustering distance: item sets differ");
}

// Directed distance in the unspecified-split graph: 2y - x + 2(k - k'),
// where x counts clusters of `from` that mix several clusters of `to` and y
// is the number of items in those mixed clusters.
inline int uc_distance(const Clustering& from, const Clustering& to) {
  check_same_items(from, to);
  int x = 0;
  int y = 0;
  for (const auto& block : from.blocks()) {
    bool mixed = false;
    for (int item : block)
      if (to.label(item) != to.label(block.front())) mixed = true;
    if (mixed) {
      ++x;
      y += static_cast<int>(block.size());
    }
  }
  return 2 * y - x + 2 * (from.block_count() - to.block_count());
}

// Hamming distance of the co-clustering matrices over ordered pairs.
inline int gc_distance(const Clustering& a, const Clustering& b) {
  check_same_items(a, b);
  int d = 0;
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j)
      if (i != j && a.together(i, j) != b.together(i, j)) ++d;
  return d;
}

}  // namespace eqlearn::clustering
