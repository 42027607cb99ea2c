#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "eqlearn/core/domain.hpp"
#include "eqlearn/core/likelihood.hpp"
#include "eqlearn/core/oracle.hpp"
#include "eqlearn/core/potential.hpp"
#include "eqlearn/core/schedule.hpp"

namespace eqlearn {

// Chooses the model to query given the learner's current weights.
using MedianSelector = std::function<ModelId(std::span<const double> weights)>;

inline MedianSelector gamma_selector(const DomainAdapter& domain) {
  return [&domain](std::span<const double> w) { return gamma_argmin(domain, w); };
}

inline MedianSelector phi_selector(const DomainAdapter& domain) {
  return [&domain](std::span<const double> w) { return phi_argmin(domain, w).model; };
}

struct QueryRecord {
  ModelId query = kNoModel;
  Response response;
  friend bool operator==(const QueryRecord&, const QueryRecord&) = default;
};

using Transcript = std::vector<QueryRecord>;

struct NoiselessResult {
  ModelId model = kNoModel;
  std::size_t queries = 0;
  Transcript transcript;
};

// Halving over the feedback graph: query a small-Phi model, intersect the
// consistent set with Reach, stop when one model remains.
inline NoiselessResult learn_noiseless(const DomainAdapter& domain,
                                       std::span<const ModelId> initial, Oracle& oracle,
                                       const MedianSelector& select) {
  if (initial.empty()) throw ConfigError("learn_noiseless: empty initial set");
  const std::size_t n = domain.model_count();
  std::vector<ModelId> consistent(initial.begin(), initial.end());
  std::sort(consistent.begin(), consistent.end());
  consistent.erase(std::unique(consistent.begin(), consistent.end()), consistent.end());

  NoiselessResult result;
  std::vector<double> weights(n, 0.0);
  while (consistent.size() > 1) {
    std::fill(weights.begin(), weights.end(), 0.0);
    for (ModelId s : consistent) weights.at(s) = 1.0;
    ModelId q = select(weights);
    Response r = oracle.respond(q, weights);
    result.transcript.push_back({q, r});
    ++result.queries;
    std::erase_if(consistent, [&](ModelId c) { return !domain.reach_contains(q, r, c); });
    if (consistent.empty())
      throw InvariantError("learn_noiseless: consistent set became empty (target not in the initial set)");
  }
  result.model = consistent.front();
  return result;
}

struct MultiWeightsResult {
  std::vector<ModelId> marked;
  std::size_t queries = 0;
  Transcript transcript;
  std::vector<double> final_weights;
};

// K + 1 rounds of multiplicative likelihood updates, marking any model that
// holds at least half of the total weight at the start of a round.
inline MultiWeightsResult multiweights(const DomainAdapter& domain, std::span<const ModelId> initial,
                                       std::size_t rounds, double p, Oracle& oracle,
                                       const MedianSelector& select) {
  if (!(p > 0.5 && p < 1.0)) throw ConfigError("multiweights: p must lie in (1/2, 1)");
  LikelihoodState state(domain.model_count(), initial, p);
  MultiWeightsResult result;
  std::vector<bool> is_marked(domain.model_count(), false);
  for (std::size_t it = 0; it <= rounds; ++it) {
    auto w = state.weights();
    for (ModelId s = 0; s < w.size(); ++s)
      if (w[s] >= 0.5 - 1e-12 && !is_marked[s]) {
        is_marked[s] = true;
        result.marked.push_back(s);
      }
    ModelId q = select(w);
    Response r = oracle.respond(q, w);
    result.transcript.push_back({q, r});
    ++result.queries;
    state.update([&](ModelId c) { return domain.reach_contains(q, r, c); });
  }
  result.final_weights = state.weights();
  std::sort(result.marked.begin(), result.marked.end());
  return result;
}

struct NoisyResult {
  std::optional<ModelId> model;
  std::size_t queries = 0;
  Transcript transcript;
  std::optional<NoisySchedule> schedule;
  std::size_t k2 = 0;
  std::size_t stage1_size = 0;
  std::size_t stage2_size = 0;
  std::size_t repeats = 0;
};

// Two MultiWeights stages followed by repeated-query verification of each
// surviving candidate. Returns no model on failure (probability <= delta).
// p = 1 routes to the noiseless learner.
inline NoisyResult learn_noisy(const DomainAdapter& domain, std::span<const ModelId> initial,
                               double p, double delta, double beta, Oracle& oracle,
                               const MedianSelector& select) {
  NoisyResult out;
  if (p == 1.0) {
    auto r = learn_noiseless(domain, initial, oracle, select);
    out.model = r.model;
    out.queries = r.queries;
    out.transcript = std::move(r.transcript);
    return out;
  }
  NoisySchedule sched = make_schedule(p, delta, beta, initial.size());
  out.schedule = sched;

  auto append = [&out](MultiWeightsResult& mw) {
    out.queries += mw.queries;
    out.transcript.insert(out.transcript.end(), mw.transcript.begin(), mw.transcript.end());
  };

  auto stage1 = multiweights(domain, initial, sched.k1, p, oracle, select);
  append(stage1);
  out.stage1_size = stage1.marked.size();
  if (stage1.marked.empty()) return out;

  out.k2 = stage2_rounds(sched, stage1.marked.size());
  auto stage2 = multiweights(domain, stage1.marked, out.k2, p, oracle, select);
  append(stage2);
  out.stage2_size = stage2.marked.size();
  if (stage2.marked.empty()) return out;

  out.repeats = verification_repeats(sched, stage2.marked.size());
  for (ModelId s : stage2.marked) {
    std::size_t confirmations = 0;
    for (std::size_t i = 0; i < out.repeats; ++i) {
      Response r = oracle.respond(s, stage2.final_weights);
      out.transcript.push_back({s, r});
      ++out.queries;
      if (r.confirmed) ++confirmations;
    }
    if (2 * confirmations >= out.repeats) {
      out.model = s;
      return out;
    }
  }
  return out;
}

// Upper bound ceil(log_{1/beta} N0) on noiseless queries when every queried
// model has Phi <= beta.
inline std::size_t noiseless_query_bound(std::size_t n0, double beta) {
  if (n0 <= 1) return 0;
  return ceil_count(std::log(static_cast<double>(n0)) / std::log(1.0 / beta));
}

}  // namespace eqlearn
