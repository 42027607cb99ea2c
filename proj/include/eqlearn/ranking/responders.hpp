#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "eqlearn/core/oracle.hpp"
#include "eqlearn/ranking/linear_extensions.hpp"
#include "eqlearn/ranking/permutation_space.hpp"

namespace eqlearn::ranking {

// Response to a proposed ordering: confirmation, or "the element at position
// `from` should precede the elements at positions to..from-1".
struct RankingFeedback {
  bool confirmed = false;
  int from = 0;
  int to = 0;

  static RankingFeedback confirm() { return {true, 0, 0}; }
  static RankingFeedback move(int from, int to) { return {false, from, to}; }
  int length() const { return from - to; }

  // Precedence pairs (a, b) = "a before b" implied by the move.
  std::vector<std::pair<int, int>> implied_pairs(const Permutation& query) const {
    std::vector<std::pair<int, int>> out;
    if (confirmed) return out;
    for (int m = to; m < from; ++m) out.emplace_back(query.at(from), query.at(m));
    return out;
  }

  friend bool operator==(const RankingFeedback&, const RankingFeedback&) = default;
};

// Permutation-level user, for learners that do not enumerate the n! models.
class RankingResponder {
 public:
  virtual ~RankingResponder() = default;
  virtual RankingFeedback respond(const Permutation& query) = 0;
};

// Correct moves of the given kind that bring `query` closer to `target`.
inline std::vector<RankingFeedback> valid_ranking_moves(const Permutation& query, const Permutation& target,
                                                        FeedbackKind kind) {
  std::vector<RankingFeedback> out;
  if (query == target) return {RankingFeedback::confirm()};
  const int n = query.size();
  for (int i = 1; i < n; ++i) {
    int lowest = kind == FeedbackKind::bubble ? i - 1 : 0;
    for (int j = i - 1; j >= lowest; --j) {
      if (!target.precedes(query.at(i), query.at(j))) break;
      out.push_back(RankingFeedback::move(i, j));
    }
  }
  return out;
}

inline std::vector<RankingFeedback> all_ranking_moves(int n, FeedbackKind kind) {
  std::vector<RankingFeedback> out;
  for (int i = 1; i < n; ++i)
    for (int j = i - 1; j >= (kind == FeedbackKind::bubble ? i - 1 : 0); --j)
      out.push_back(RankingFeedback::move(i, j));
  return out;
}

// Simulated user with a fixed target permutation. Correct moves are drawn
// uniformly; with probability 1 - p an incorrect response (a wrong move or a
// false confirmation) is drawn uniformly instead.
class TargetRankingResponder final : public RankingResponder {
 public:
  TargetRankingResponder(Permutation target, FeedbackKind kind, double p, std::uint64_t seed)
      : target_(std::move(target)), kind_(kind), p_(p), rng_(seed) {
    if (!(p > 0.5 && p <= 1.0)) throw ConfigError("ranking responder: p must lie in (1/2, 1]");
  }

  const Permutation& target() const { return target_; }

  RankingFeedback respond(const Permutation& query) override {
    auto valid = valid_ranking_moves(query, target_, kind_);
    bool truthful = p_ >= 1.0 || uniform_real(rng_) < p_;
    if (!truthful) {
      std::vector<RankingFeedback> wrong;
      if (!(query == target_)) wrong.push_back(RankingFeedback::confirm());
      for (const RankingFeedback& m : all_ranking_moves(query.size(), kind_))
        if (std::find(valid.begin(), valid.end(), m) == valid.end()) wrong.push_back(m);
      if (!wrong.empty()) return wrong[uniform_index(rng_, wrong.size())];
    }
    return valid[uniform_index(rng_, valid.size())];
  }

 private:
  Permutation target_;
  FeedbackKind kind_;
  double p_;
  Rng rng_;
};

// Presents a permutation-level responder as a model-level oracle on an
// explicit permutation space.
class ResponderOracle final : public Oracle {
 public:
  ResponderOracle(const PermutationSpace& space, RankingResponder& responder)
      : space_(&space), responder_(&responder) {}

  Response respond(ModelId query, std::span<const double>) override {
    const Permutation& q = space_->model(query);
    RankingFeedback f = responder_->respond(q);
    if (f.confirmed) return Response::confirm();
    return Response::move(space_->id_of(q.shifted(f.from, f.to)), static_cast<double>(f.length()));
  }

 private:
  const PermutationSpace* space_;
  RankingResponder* responder_;
};

}  // namespace eqlearn::ranking
