#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <queue>
#include <utility>
#include <vector>

#include "eqlearn/ranking/permutation.hpp"

namespace eqlearn::ranking {

// Accumulated precedence constraints "a must precede b" over items 0..n-1,
// kept transitively closed as bit rows. Insertions that would close a cycle
// are rejected.
class PartialOrderConstraints {
 public:
  static constexpr int kMaxItems = 64;

  explicit PartialOrderConstraints(int n) : n_(n), below_(static_cast<std::size_t>(n), 0), above_(static_cast<std::size_t>(n), 0) {
    if (n < 0 || n > kMaxItems) throw ConfigError("PartialOrderConstraints: n must lie in 0..64");
  }

  int size() const { return n_; }

  // True iff a is required to precede b (directly or transitively).
  bool precedes(int a, int b) const { return (below_[a] >> b) & 1ULL; }
  bool comparable(int a, int b) const { return precedes(a, b) || precedes(b, a); }

  // Adds a < b. Returns false (leaving the order unchanged) if b < a already
  // holds, i.e. the insertion would create a cycle.
  bool try_add(int a, int b) {
    check(a);
    check(b);
    if (a == b || precedes(b, a)) return false;
    if (precedes(a, b)) return true;
    std::uint64_t ups = above_[a] | bit(a);
    std::uint64_t downs = below_[b] | bit(b);
    for (int x = 0; x < n_; ++x) {
      if (ups & bit(x)) below_[x] |= downs;
      if (downs & bit(x)) above_[x] |= ups;
    }
    return true;
  }

  void add(int a, int b) {
    if (!try_add(a, b)) throw InvariantError("PartialOrderConstraints: constraint would create a cycle");
  }

  // Items that must come before `item`.
  std::uint64_t predecessors(int item) const { return above_[item]; }
  std::uint64_t successors(int item) const { return below_[item]; }

  bool is_total() const {
    for (int a = 0; a < n_; ++a)
      if (std::popcount(below_[a] | above_[a]) != n_ - 1) return false;
    return true;
  }

  bool satisfied_by(const Permutation& p) const {
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        if (precedes(a, b) && !p.precedes(a, b)) return false;
    return true;
  }

  // Kahn's algorithm, smallest available label first.
  Permutation topological_order() const {
    std::vector<int> indeg(static_cast<std::size_t>(n_), 0);
    std::vector<std::vector<int>> cover(static_cast<std::size_t>(n_));
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        if (precedes(a, b)) {
          cover[a].push_back(b);
          ++indeg[b];
        }
    std::priority_queue<int, std::vector<int>, std::greater<>> ready;
    for (int a = 0; a < n_; ++a)
      if (indeg[a] == 0) ready.push(a);
    std::vector<int> out;
    while (!ready.empty()) {
      int a = ready.top();
      ready.pop();
      out.push_back(a);
      for (int b : cover[a])
        if (--indeg[b] == 0) ready.push(b);
    }
    return Permutation(std::move(out));
  }

  std::vector<std::pair<int, int>> relations() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        if (precedes(a, b)) out.emplace_back(a, b);
    return out;
  }

 private:
  static std::uint64_t bit(int x) { return 1ULL << x; }
  void check(int x) const {
    if (x < 0 || x >= n_) throw ConfigError("PartialOrderConstraints: item out of range");
  }

  int n_;
  std::vector<std::uint64_t> below_;  // below_[a]: items that a must precede
  std::vector<std::uint64_t> above_;  // above_[a]: items that must precede a
};

// Mixing budget ceil(4 n^3 ln n) + 64 for the adjacent-transposition chain.
inline std::size_t default_chain_steps(int n) {
  double nn = static_cast<double>(n);
  double core = n > 1 ? 4.0 * nn * nn * nn * std::log(nn) : 0.0;
  return static_cast<std::size_t>(std::ceil(core)) + 64;
}

// Lazy adjacent-transposition chain over the linear extensions of a partial
// order. Each step picks a position k uniformly and, with probability 1/2,
// swaps positions k and k+1 if the result is still an extension. The kernel
// is symmetric, so the stationary distribution is uniform.
class LinearExtensionChain {
 public:
  explicit LinearExtensionChain(const PartialOrderConstraints& order)
      : order_(&order), state_(order.topological_order().items()) {}

  void reset() { state_ = order_->topological_order().items(); }

  void step(Rng& rng) {
    const int n = order_->size();
    if (n < 2) return;
    std::size_t draw = uniform_index(rng, static_cast<std::size_t>(2 * (n - 1)));
    if (draw & 1U) return;  // lazy half
    std::size_t k = draw >> 1U;
    if (!order_->precedes(state_[k], state_[k + 1])) std::swap(state_[k], state_[k + 1]);
  }

  void run(std::size_t steps, Rng& rng) {
    for (std::size_t i = 0; i < steps; ++i) step(rng);
  }

  Permutation current() const { return Permutation(state_); }
  const std::vector<int>& items() const { return state_; }

 private:
  const PartialOrderConstraints* order_;
  std::vector<int> state_;
};

// One approximately uniform linear extension: `steps` chain steps from the
// topological-sort start.
inline Permutation sample_linear_extension(const PartialOrderConstraints& order, std::size_t steps,
                                           Rng& rng) {
  LinearExtensionChain chain(order);
  chain.run(steps, rng);
  return chain.current();
}

// Transition probability of one chain step between two extensions.
inline double chain_transition_probability(const PartialOrderConstraints& order,
                                           const Permutation& from, const Permutation& to) {
  const int n = order.size();
  if (n < 2) return from == to ? 1.0 : 0.0;
  const double per_move = 1.0 / (2.0 * (n - 1));
  double stay = 0.5;
  double move = 0.0;
  for (int k = 0; k + 1 < n; ++k) {
    bool blocked = order.precedes(from.at(k), from.at(k + 1));
    if (blocked) {
      stay += per_move;
    } else if (from.swapped_adjacent(k) == to) {
      move += per_move;
    }
  }
  return from == to ? stay : move;
}

// Brute-force enumeration (n <= 9).
inline std::vector<Permutation> enumerate_linear_extensions(const PartialOrderConstraints& order) {
  std::vector<Permutation> out;
  for (Permutation& p : all_permutations(order.size()))
    if (order.satisfied_by(p)) out.push_back(std::move(p));
  return out;
}

}  // namespace eqlearn::ranking
