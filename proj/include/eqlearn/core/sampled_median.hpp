#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "eqlearn/core/domain.hpp"
#include "eqlearn/core/schedule.hpp"

namespace eqlearn {

struct SampleBudget {
  std::size_t samples_per_iteration = 0;
  std::size_t iteration_cap = 0;
};

// r = ceil(8 ln(40 D T) / eps'^2) samples per iteration, with the iteration
// cap T = ceil(diameter / (2 eps' w_min)) + 1 and eps' = eps / 3.
inline SampleBudget default_sample_budget(std::size_t max_degree, double diameter,
                                          double min_edge_length, double epsilon) {
  if (!(epsilon > 0.0)) throw ConfigError("sampled median: epsilon must be positive");
  if (!(min_edge_length > 0.0)) throw ConfigError("sampled median: edge lengths must be positive");
  double eps3 = epsilon / 3.0;
  SampleBudget b;
  b.iteration_cap = ceil_count(diameter / (2.0 * eps3 * min_edge_length)) + 1;
  double dt = 40.0 * static_cast<double>(std::max<std::size_t>(max_degree, 1)) *
              static_cast<double>(b.iteration_cap);
  b.samples_per_iteration = ceil_count(8.0 * std::log(dt) / (eps3 * eps3));
  return b;
}

struct SampledMedianOptions {
  double tv_slack = 0.0;  // Delta: total-variation bound of the sampler, < 1/4
  double epsilon = 0.1;
  // false: draw one pool and reuse it, turning the search into exact local
  // search over the empirical distribution. Cheaper when draws are costly.
  bool fresh_pool = true;
  // Zero fields fall back to default_sample_budget.
  SampleBudget budget;
};

template <class Model>
struct LocalSearchResult {
  Model model{};
  std::size_t iterations = 0;
  std::size_t samples_per_iteration = 0;
  std::size_t samples_drawn = 0;
};

// Local search for an approximate median driven only by samples. `edges(m)`
// lists (neighbour, length) feedback edges, `in_reach(m, neighbour, length,
// candidate)` decides Reach membership, and `sample(rng)` draws a model from
// (approximately) the current weight distribution. Moves across the edge
// with the largest estimate above 1/2 + Delta + 2 eps'.
template <class Model, class EdgesFn, class ReachFn, class SampleFn>
LocalSearchResult<Model> approximate_median_search(Model start, EdgesFn&& edges, ReachFn&& in_reach,
                                                   SampleFn&& sample, SampleBudget budget,
                                                   const SampledMedianOptions& opt, Rng& rng) {
  if (!(opt.tv_slack >= 0.0 && opt.tv_slack < 0.25))
    throw ConfigError("sampled median: sampler slack Delta must lie in [0, 1/4)");
  if (budget.samples_per_iteration == 0 || budget.iteration_cap == 0)
    throw ConfigError("sampled median: empty sample budget");
  const double threshold = 0.5 + opt.tv_slack + 2.0 * (opt.epsilon / 3.0);

  LocalSearchResult<Model> res;
  res.model = std::move(start);
  res.samples_per_iteration = budget.samples_per_iteration;
  std::vector<Model> pool;
  pool.reserve(budget.samples_per_iteration);
  while (true) {
    if (res.iterations >= budget.iteration_cap)
      throw InvariantError("sampled median: iteration cap exceeded (sampler bias beyond Delta?)");
    ++res.iterations;
    if (opt.fresh_pool || pool.empty()) {
      pool.clear();
      for (std::size_t i = 0; i < budget.samples_per_iteration; ++i) pool.push_back(sample(rng));
      res.samples_drawn += pool.size();
    }

    auto out = edges(res.model);
    double best_q = -1.0;
    std::size_t best = out.size();
    for (std::size_t k = 0; k < out.size(); ++k) {
      std::size_t hits = 0;
      for (const Model& m : pool)
        if (in_reach(res.model, out[k].first, out[k].second, m)) ++hits;
      double q = static_cast<double>(hits) / static_cast<double>(pool.size());
      if (q > threshold && q > best_q) {
        best_q = q;
        best = k;
      }
    }
    if (best == out.size()) return res;
    res.model = out[best].first;
  }
}

// Explicit-domain form over model ids.
inline LocalSearchResult<ModelId> sampled_median(const DomainAdapter& domain,
                                                 const std::function<ModelId(Rng&)>& sampler,
                                                 ModelId start, SampledMedianOptions opt, Rng& rng) {
  if (domain.directed()) throw ConfigError("sampled median requires an undirected domain");
  SampleBudget budget = opt.budget;
  if (budget.samples_per_iteration == 0 || budget.iteration_cap == 0) {
    SampleBudget def = default_sample_budget(domain.max_feedback_degree(), domain.diameter(),
                                             domain.min_edge_length(), opt.epsilon);
    if (budget.samples_per_iteration == 0) budget.samples_per_iteration = def.samples_per_iteration;
    if (budget.iteration_cap == 0) budget.iteration_cap = def.iteration_cap;
  }
  auto edges = [&domain](ModelId s) {
    std::vector<std::pair<ModelId, double>> out;
    for (const FeedbackEdge& e : domain.feedback_edges(s))
      if (e.target != s) out.emplace_back(e.target, e.length);
    return out;
  };
  auto in_reach = [&domain](ModelId s, ModelId to, double len, ModelId c) {
    return domain.reach_contains(s, Response::move(to, len), c);
  };
  return approximate_median_search<ModelId>(start, edges, in_reach, sampler, budget, opt, rng);
}

// Sampler drawing exactly from a weight vector (Delta = 0).
inline std::function<ModelId(Rng&)> exact_weight_sampler(std::vector<double> weights) {
  return [dist = std::discrete_distribution<ModelId>(weights.begin(), weights.end())](
             Rng& rng) mutable { return dist(rng); };
}

}  // namespace eqlearn
