#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "eqlearn/ranking/responders.hpp"

namespace eqlearn::ranking {

// Unrolled recurrence Q(n) = floor(n/4) + 2 Q(floor(n/2)), Q(0) = Q(1) = 0.
inline std::size_t lower_bound_queries(int n) {
  if (n < 2) return 0;
  return static_cast<std::size_t>(n / 4) + 2 * lower_bound_queries(n / 2);
}

// Adaptive adversary answering with adjacent transpositions.
//
// The committed target is an ordered list of blocks. A block of size m is
// first probed for floor(m/4) rounds: each round names an adjacent pair of
// unmarked block members as inverted and marks the earlier one '+' and the
// later one '-'. The block is then split into L- (ceil(m/2) elements, all '-'
// marks) followed by L+ (all '+' marks), and the two halves are handled the
// same way, L- first. Queries that place a later block before an earlier one
// are answered with an adjacent cross-block descent.
class LowerBoundAdversary final : public RankingResponder {
 public:
  struct Block {
    std::vector<int> items;
    std::size_t rounds = 0;
    std::vector<int> plus;
    std::vector<int> minus;
  };

  struct LogEntry {
    Permutation query;
    RankingFeedback feedback;
  };

  explicit LowerBoundAdversary(int n) : n_(n) {
    if (n < 1) throw ConfigError("adversary: n must be positive");
    Block all;
    for (int x = 0; x < n; ++x) all.items.push_back(x);
    blocks_.push_back(std::move(all));
  }

  int size() const { return n_; }
  const std::vector<LogEntry>& log() const { return log_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  bool committed() const {
    return std::all_of(blocks_.begin(), blocks_.end(), [](const Block& b) { return b.items.size() == 1; });
  }

  // Current commitment; the order inside blocks that are still open is
  // resolved by label so this is always a total order consistent with the log.
  Permutation committed_permutation() const {
    std::vector<int> out;
    for (const Block& b : blocks_) {
      std::vector<int> items = b.items;
      // Inside an open block every '-' must precede its '+' partner.
      std::vector<int> rest;
      for (int x : items)
        if (!contains(b.minus, x) && !contains(b.plus, x)) rest.push_back(x);
      std::vector<int> minus = b.minus;
      std::vector<int> plus = b.plus;
      std::sort(minus.begin(), minus.end());
      std::sort(rest.begin(), rest.end());
      std::sort(plus.begin(), plus.end());
      out.insert(out.end(), minus.begin(), minus.end());
      out.insert(out.end(), rest.begin(), rest.end());
      out.insert(out.end(), plus.begin(), plus.end());
    }
    return Permutation(std::move(out));
  }

  RankingFeedback respond(const Permutation& query) override {
    if (query.size() != n_) throw ConfigError("adversary: query has the wrong size");
    RankingFeedback f = answer(query);
    log_.push_back({query, f});
    return f;
  }

  // True iff every logged response names a pair inverted in `target`, and
  // confirmations occurred only on `target` itself.
  bool consistent_with(const Permutation& target) const {
    for (const LogEntry& e : log_) {
      if (e.feedback.confirmed) {
        if (!(e.query == target)) return false;
        continue;
      }
      for (auto [a, b] : e.feedback.implied_pairs(e.query))
        if (!target.precedes(a, b)) return false;
    }
    return true;
  }

 private:
  static bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

  std::vector<int> block_index() const {
    std::vector<int> idx(static_cast<std::size_t>(n_), 0);
    for (std::size_t b = 0; b < blocks_.size(); ++b)
      for (int x : blocks_[b].items) idx[x] = static_cast<int>(b);
    return idx;
  }

  RankingFeedback answer(const Permutation& query) {
    while (true) {
      auto idx = block_index();
      for (int k = 0; k + 1 < n_; ++k)
        if (idx[query.at(k)] > idx[query.at(k + 1)]) return RankingFeedback::move(k + 1, k);

      // The query respects the block order, so each block is contiguous.
      auto open = std::find_if(blocks_.begin(), blocks_.end(), [](const Block& b) { return b.items.size() > 1; });
      if (open == blocks_.end()) return RankingFeedback::confirm();

      Block& b = *open;
      const std::size_t m = b.items.size();
      if (b.rounds < m / 4) {
        for (int k = 0; k + 1 < n_; ++k) {
          int i = query.at(k);
          int j = query.at(k + 1);
          if (idx[i] != open - blocks_.begin() || idx[j] != idx[i]) continue;
          if (marked(b, i) || marked(b, j)) continue;
          b.plus.push_back(i);
          b.minus.push_back(j);
          ++b.rounds;
          return RankingFeedback::move(k + 1, k);
        }
        throw InvariantError("adversary: no adjacent unmarked pair inside the open block");
      }
      split(open - blocks_.begin(), query);
    }
  }

  static bool marked(const Block& b, int x) { return contains(b.plus, x) || contains(b.minus, x); }

  // L- takes ceil(m/2) elements: every '-' plus the unmarked elements that
  // appear latest in the current query, so the query is as wrong as possible.
  void split(std::ptrdiff_t at, const Permutation& query) {
    Block b = std::move(blocks_[static_cast<std::size_t>(at)]);
    const std::size_t m = b.items.size();
    const std::size_t lower_size = (m + 1) / 2;
    std::vector<int> unmarked;
    for (int x : b.items)
      if (!marked(b, x)) unmarked.push_back(x);
    std::sort(unmarked.begin(), unmarked.end(),
              [&](int x, int y) { return query.position(x) > query.position(y); });
    Block lower, upper;
    lower.items = b.minus;
    upper.items = b.plus;
    for (int x : unmarked) (lower.items.size() < lower_size ? lower.items : upper.items).push_back(x);
    std::sort(lower.items.begin(), lower.items.end());
    std::sort(upper.items.begin(), upper.items.end());
    blocks_[static_cast<std::size_t>(at)] = std::move(upper);
    blocks_.insert(blocks_.begin() + at, std::move(lower));
  }

  int n_;
  std::vector<Block> blocks_;
  std::vector<LogEntry> log_;
};

}  // namespace eqlearn::ranking
