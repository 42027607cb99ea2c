#pragma once

#include <string>
#include <utility>
#include <vector>

#include "eqlearn/core/sampled_median.hpp"
#include "eqlearn/ranking/extension_dp.hpp"
#include "eqlearn/ranking/responders.hpp"

namespace eqlearn::ranking {

// How a constraint-based ranker picks its next query.
//   exact_dp   : Kemeny/Gamma median of the uniform distribution over the
//                consistent permutations, computed exactly (n <= 20).
//   sampled    : sample-driven local search over linear-extension draws.
//   bubble_fix : apply each reported move to the previous query.
enum class RankStrategy { exact_dp, sampled, bubble_fix };

inline RankStrategy parse_rank_strategy(const std::string& s) {
  if (s == "exact" || s == "exact-dp" || s == "gamma-exact") return RankStrategy::exact_dp;
  if (s == "sampled") return RankStrategy::sampled;
  if (s == "bubble-fix") return RankStrategy::bubble_fix;
  throw ConfigError("unknown ranking strategy '" + s + "' (expected exact-dp|sampled|bubble-fix)");
}

inline std::string to_string(RankStrategy s) {
  switch (s) {
    case RankStrategy::exact_dp: return "exact-dp";
    case RankStrategy::sampled: return "sampled";
    case RankStrategy::bubble_fix: return "bubble-fix";
  }
  return "exact-dp";
}

struct SampledRankOptions {
  // Zero budget fields use default_sample_budget. One pool per query by
  // default, since every draw costs a chain run.
  SampledMedianOptions median = [] {
    SampledMedianOptions o;
    o.fresh_pool = false;
    return o;
  }();
  std::size_t burn_in = 0;        // 0: default_chain_steps(n)
  std::size_t thin = 0;           // chain steps between draws; 0: n^3
};

struct RankerOptions {
  RankStrategy strategy = RankStrategy::exact_dp;
  FeedbackKind kind = FeedbackKind::bubble;
  SampledRankOptions sampled;
  std::size_t max_queries = 0;    // 0: 4 n^2 + 16
  bool stop_on_total = true;      // stop without a final query once only one order is left
};

struct RankResult {
  Permutation model;
  std::size_t queries = 0;
  bool confirmed = false;
  PartialOrderConstraints constraints{0};
  std::vector<std::pair<Permutation, RankingFeedback>> transcript;
};

namespace detail {

// Feedback edges of a permutation as (neighbour, length).
inline std::vector<std::pair<Permutation, double>> ranking_edges(const Permutation& p, FeedbackKind kind) {
  std::vector<std::pair<Permutation, double>> out;
  const int n = p.size();
  for (int i = 1; i < n; ++i)
    for (int j = i - 1; j >= (kind == FeedbackKind::bubble ? i - 1 : 0); --j)
      out.emplace_back(p.shifted(i, j), static_cast<double>(i - j));
  return out;
}

// Candidate c is in Reach(p, p') iff it agrees with every pair the move flips.
inline bool move_reach_contains(const Permutation& p, const Permutation& moved, double length,
                                const Permutation& c) {
  int j = 0;
  while (j < p.size() && p.at(j) == moved.at(j)) ++j;
  if (j == p.size()) return c == p;
  int i = j + static_cast<int>(length);
  for (int m = j; m < i; ++m)
    if (!c.precedes(p.at(i), p.at(m))) return false;
  return true;
}

}  // namespace detail

// Sample-driven approximate median over the linear extensions of `order`.
inline LocalSearchResult<Permutation> sampled_rank_median(const PartialOrderConstraints& order,
                                                          FeedbackKind kind, const SampledRankOptions& opt,
                                                          Rng& rng) {
  const int n = order.size();
  const std::size_t burn_in = opt.burn_in ? opt.burn_in : default_chain_steps(n);
  // Draws after burn-in are marginally uniform; thinning only trades
  // correlation for speed.
  const std::size_t thin = opt.thin ? opt.thin : static_cast<std::size_t>(std::max(n * n * n, 1));
  SampleBudget budget = opt.median.budget;
  if (budget.samples_per_iteration == 0 || budget.iteration_cap == 0) {
    std::size_t degree = kind == FeedbackKind::bubble ? static_cast<std::size_t>(std::max(n - 1, 1))
                                                      : static_cast<std::size_t>(std::max(n * (n - 1) / 2, 1));
    SampleBudget def = default_sample_budget(degree, n * (n - 1) / 2.0, 1.0, opt.median.epsilon);
    if (budget.samples_per_iteration == 0) budget.samples_per_iteration = def.samples_per_iteration;
    if (budget.iteration_cap == 0) budget.iteration_cap = def.iteration_cap;
  }
  LinearExtensionChain chain(order);
  chain.run(burn_in, rng);
  bool first = true;
  auto sample = [&](Rng& r) {
    if (!first) chain.run(thin, r);
    first = false;
    return chain.current();
  };
  auto edges = [kind](const Permutation& p) { return detail::ranking_edges(p, kind); };
  return approximate_median_search<Permutation>(order.topological_order(), edges, detail::move_reach_contains,
                                                sample, budget, opt.median, rng);
}

// Interactive ranking against a permutation-level responder. Feedback is
// accumulated as precedence constraints; the consistent set is exactly the
// set of linear extensions, in both the bubble and insertion graphs.
inline RankResult learn_ranking(int n, RankingResponder& responder, const RankerOptions& opt, Rng& rng) {
  if (n < 1) throw ConfigError("learn_ranking: n must be positive");
  RankResult res;
  res.constraints = PartialOrderConstraints(n);
  const std::size_t cap = opt.max_queries ? opt.max_queries : static_cast<std::size_t>(4 * n * n + 16);
  Permutation query = Permutation::identity(n);
  while (true) {
    if (opt.stop_on_total && res.constraints.is_total()) {
      res.model = res.constraints.topological_order();
      return res;
    }
    switch (opt.strategy) {
      case RankStrategy::exact_dp:
        query = kemeny_median(precedence_matrix(res.constraints));
        break;
      case RankStrategy::sampled:
        query = sampled_rank_median(res.constraints, opt.kind, opt.sampled, rng).model;
        break;
      case RankStrategy::bubble_fix:
        break;  // keep the previous query with the last move applied
    }
    if (res.queries >= cap) throw InvariantError("learn_ranking: query cap exceeded");
    RankingFeedback f = responder.respond(query);
    ++res.queries;
    res.transcript.emplace_back(query, f);
    if (f.confirmed) {
      res.model = query;
      res.confirmed = true;
      return res;
    }
    if (f.to < 0 || f.from >= n || f.to >= f.from) throw InvariantError("learn_ranking: malformed feedback");
    for (auto [a, b] : f.implied_pairs(query))
      if (!res.constraints.try_add(a, b))
        throw InvariantError("learn_ranking: feedback contradicts earlier feedback (constraint cycle)");
    if (opt.strategy == RankStrategy::bubble_fix) query = query.shifted(f.from, f.to);
  }
}

// Noiseless ranker that only touches permutations through linear-extension
// samples, never enumerating the n! orderings.
inline RankResult efficient_noiseless_ranker(int n, RankingResponder& responder, FeedbackKind kind,
                                             const SampledRankOptions& sampled, Rng& rng) {
  RankerOptions opt;
  opt.strategy = RankStrategy::sampled;
  opt.kind = kind;
  opt.sampled = sampled;
  return learn_ranking(n, responder, opt, rng);
}

}  // namespace eqlearn::ranking
