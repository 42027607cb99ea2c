#pragma once

#include <span>
#include <string>
#include <vector>

#include "eqlearn/core/domain.hpp"
#include "eqlearn/core/oracle.hpp"
#include "eqlearn/ranking/permutation.hpp"

namespace eqlearn::ranking {

enum class FeedbackKind { bubble, insertion };

inline FeedbackKind parse_feedback_kind(const std::string& s) {
  if (s == "bubble") return FeedbackKind::bubble;
  if (s == "insertion") return FeedbackKind::insertion;
  throw ConfigError("unknown ranking feedback '" + s + "' (expected bubble|insertion)");
}

// Explicit permutation graph on n! models indexed lexicographically.
//
// Bubble-sort feedback: adjacent transpositions, unit length, undirected.
// Insertion-sort feedback: move position i in front of position j (j < i),
// length i - j. The reverse orientation of each move with i - j >= 2 is a
// graph edge but never a user response.
class PermutationSpace final : public DomainAdapter {
 public:
  static constexpr int kMaxItems = 9;

  PermutationSpace(int n, FeedbackKind kind) : n_(n), kind_(kind) {
    if (n < 1 || n > kMaxItems) throw ConfigError("PermutationSpace: n must lie in 1..9");
    models_ = all_permutations(n);
  }

  int items() const { return n_; }
  FeedbackKind kind() const { return kind_; }

  std::string name() const override {
    return kind_ == FeedbackKind::bubble ? "ranking-bubble" : "ranking-insertion";
  }
  std::size_t model_count() const override { return models_.size(); }
  bool directed() const override { return false; }

  const Permutation& model(ModelId s) const { return models_.at(s); }
  ModelId id_of(const Permutation& p) const { return lex_rank(p); }

  std::vector<Edge> edges(ModelId s) const override {
    const Permutation& p = models_.at(s);
    std::vector<Edge> out;
    if (kind_ == FeedbackKind::bubble) {
      for (int k = 0; k + 1 < n_; ++k) out.push_back(Edge{id_of(p.swapped_adjacent(k)), 1.0, true});
      return out;
    }
    for (int i = 1; i < n_; ++i)
      for (int j = 0; j < i; ++j)
        out.push_back(Edge{id_of(p.shifted(i, j)), static_cast<double>(i - j), true});
    for (int j = 0; j < n_; ++j)
      for (int i = j + 2; i < n_; ++i)
        out.push_back(Edge{id_of(p.shifted(j, i)), static_cast<double>(i - j), false});
    return out;
  }

  double distance(ModelId a, ModelId b) const override {
    return static_cast<double>(kendall_tau(models_.at(a), models_.at(b)));
  }

  // Sum of weighted Kendall distances via the pairwise precedence mass:
  // Gamma(s) = sum over pairs a before b in s of W[b before a].
  std::vector<double> gamma_all(std::span<const double> weights) const override {
    const std::size_t n = static_cast<std::size_t>(n_);
    std::vector<double> before(n * n, 0.0);
    for (ModelId t = 0; t < weights.size(); ++t) {
      if (!(weights[t] > 0.0)) continue;
      const Permutation& p = models_[t];
      for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) before[p.at(i) * n + p.at(j)] += weights[t];
    }
    std::vector<double> out(models_.size(), 0.0);
    for (ModelId s = 0; s < models_.size(); ++s) {
      const Permutation& p = models_[s];
      double acc = 0.0;
      for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) acc += before[p.at(j) * n + p.at(i)];
      out[s] = acc;
    }
    return out;
  }

  std::size_t max_feedback_degree() const override {
    return kind_ == FeedbackKind::bubble ? static_cast<std::size_t>(n_ - 1)
                                         : static_cast<std::size_t>(n_ * (n_ - 1) / 2);
  }
  double diameter() const override { return static_cast<double>(n_ * (n_ - 1) / 2); }
  double min_edge_length() const override { return 1.0; }

 private:
  int n_;
  FeedbackKind kind_;
  std::vector<Permutation> models_;
};

// Simulated ranking user: adjacent inversions (bubble) or block moves
// (insertion) on shortest paths to the target, noisy with probability 1 - p.
inline SimulatedOracle make_ranking_oracle(const PermutationSpace& space, const Permutation& target,
                                           OracleConfig config) {
  return SimulatedOracle(space, space.id_of(target), config);
}

}  // namespace eqlearn::ranking
