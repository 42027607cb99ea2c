#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "eqlearn/core/types.hpp"

namespace eqlearn::ranking {

// Arrangement of item labels 0..n-1; at(k) is the item in position k.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<int> items) : items_(std::move(items)), pos_(items_.size(), -1) {
    const int n = static_cast<int>(items_.size());
    for (int k = 0; k < n; ++k) {
      int x = items_[k];
      if (x < 0 || x >= n || pos_[x] != -1) throw ConfigError("Permutation: items must be a bijection on 0..n-1");
      pos_[x] = k;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 0);
    return Permutation(std::move(v));
  }

  int size() const { return static_cast<int>(items_.size()); }
  int at(int k) const { return items_[k]; }
  int position(int item) const { return pos_[item]; }
  bool precedes(int a, int b) const { return pos_[a] < pos_[b]; }
  const std::vector<int>& items() const { return items_; }

  // Moves the element at position `from` in front of the element at position
  // `to` (to < from), shifting positions to..from-1 one step right.
  Permutation shifted(int from, int to) const {
    std::vector<int> v = items_;
    if (to < from)
      std::rotate(v.begin() + to, v.begin() + from, v.begin() + from + 1);
    else if (from < to)
      std::rotate(v.begin() + from, v.begin() + from + 1, v.begin() + to + 1);
    return Permutation(std::move(v));
  }

  Permutation swapped_adjacent(int k) const { return shifted(k + 1, k); }

  std::string str() const {
    std::string s;
    for (std::size_t k = 0; k < items_.size(); ++k) {
      if (k) s += ' ';
      s += std::to_string(items_[k]);
    }
    return s;
  }

  friend bool operator==(const Permutation& a, const Permutation& b) { return a.items_ == b.items_; }
  friend bool operator<(const Permutation& a, const Permutation& b) { return a.items_ < b.items_; }

 private:
  std::vector<int> items_;
  std::vector<int> pos_;
};

// Number of item pairs ordered differently by a and b.
inline std::size_t kendall_tau(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw ConfigError("kendall_tau: size mismatch");
  std::size_t count = 0;
  const int n = a.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (b.precedes(a.at(j), a.at(i))) ++count;
  return count;
}

inline std::size_t factorial(int n) {
  std::size_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::size_t>(k);
  return f;
}

// Lexicographic index (Lehmer code).
inline std::size_t lex_rank(const Permutation& p) {
  const int n = p.size();
  std::size_t rank = 0;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (int k = 0; k < n; ++k) {
    int smaller = 0;
    for (int x = 0; x < p.at(k); ++x)
      if (!used[x]) ++smaller;
    rank += static_cast<std::size_t>(smaller) * factorial(n - 1 - k);
    used[p.at(k)] = true;
  }
  return rank;
}

inline Permutation lex_unrank(int n, std::size_t rank) {
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> out;
  out.reserve(pool.size());
  for (int k = n; k >= 1; --k) {
    std::size_t f = factorial(k - 1);
    std::size_t idx = rank / f;
    rank %= f;
    out.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return Permutation(std::move(out));
}

inline std::vector<Permutation> all_permutations(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

inline Permutation random_permutation(int n, Rng& rng) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  for (int k = n - 1; k > 0; --k) std::swap(v[k], v[uniform_index(rng, static_cast<std::size_t>(k) + 1)]);
  return Permutation(std::move(v));
}

}  // namespace eqlearn::ranking
