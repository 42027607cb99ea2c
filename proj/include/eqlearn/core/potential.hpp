#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <vector>

#include "eqlearn/core/domain.hpp"

namespace eqlearn {

inline double total_weight(std::span<const double> weights) {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

inline std::vector<ModelId> weight_support(std::span<const double> weights) {
  std::vector<ModelId> out;
  for (ModelId s = 0; s < weights.size(); ++s)
    if (weights[s] > 0.0) out.push_back(s);
  return out;
}

inline void check_weights(const DomainAdapter& domain, std::span<const double> weights) {
  if (weights.size() != domain.model_count())
    throw ConfigError("weight vector length does not match the model count");
  for (double w : weights)
    if (!(w >= 0.0)) throw ConfigError("weights must be non-negative");
}

// Reach(s, s'): models consistent with response s' to a query of s.
inline std::vector<ModelId> reach_set(const DomainAdapter& domain, ModelId s, const Response& r) {
  if (s >= domain.model_count()) throw ConfigError("reach_set: model index out of range");
  if (r.confirmed || r.feedback == s) return {s};
  if (!domain.is_feedback_edge(s, r.feedback, r.length))
    throw ConfigError("reach_set: (s, s') is not a feedback edge");
  std::vector<ModelId> out;
  for (ModelId c = 0; c < domain.model_count(); ++c)
    if (domain.reach_contains(s, r, c)) out.push_back(c);
  return out;
}

inline double reach_weight(const DomainAdapter& domain, std::span<const double> weights,
                           std::span<const ModelId> support, ModelId s, const Response& r) {
  double acc = 0.0;
  for (ModelId c : support)
    if (domain.reach_contains(s, r, c)) acc += weights[c];
  return acc;
}

// Phi_w(s): the largest weight fraction left consistent by a worst-case
// feedback edge out of s.
inline double potential(const DomainAdapter& domain, std::span<const double> weights, ModelId s) {
  check_weights(domain, weights);
  double total = total_weight(weights);
  if (!(total > 0.0)) throw ConfigError("potential: total weight must be positive");
  auto support = weight_support(weights);
  double best = 0.0;
  for (const FeedbackEdge& e : domain.feedback_edges(s)) {
    if (e.target == s) continue;
    best = std::max(best, reach_weight(domain, weights, support, s, Response::move(e.target, e.length)));
  }
  return best / total;
}

inline double gamma_potential(const DomainAdapter& domain, std::span<const double> weights,
                              ModelId s) {
  check_weights(domain, weights);
  double acc = 0.0;
  for (ModelId t = 0; t < weights.size(); ++t)
    if (weights[t] > 0.0) acc += domain.distance(s, t) * weights[t];
  return acc;
}

struct MedianResult {
  ModelId model = kNoModel;
  double phi = 0.0;
};

// Gamma-argmin (smallest id on ties). Its Phi is at most (c-1)/c, and at
// most 1/2 on undirected graphs.
inline ModelId gamma_argmin(const DomainAdapter& domain, std::span<const double> weights) {
  check_weights(domain, weights);
  if (!(total_weight(weights) > 0.0)) throw ConfigError("median: total weight must be positive");
  auto gamma = domain.gamma_all(weights);
  ModelId best = 0;
  for (ModelId s = 1; s < gamma.size(); ++s)
    if (gamma[s] < gamma[best]) best = s;
  return best;
}

inline MedianResult exact_median(const DomainAdapter& domain, std::span<const double> weights) {
  ModelId m = gamma_argmin(domain, weights);
  return MedianResult{m, potential(domain, weights, m)};
}

// Exhaustive Phi-argmin; quadratic in the model count, for small domains.
inline MedianResult phi_argmin(const DomainAdapter& domain, std::span<const double> weights) {
  check_weights(domain, weights);
  double total = total_weight(weights);
  if (!(total > 0.0)) throw ConfigError("median: total weight must be positive");
  auto support = weight_support(weights);
  MedianResult best{kNoModel, kInfinity};
  for (ModelId s = 0; s < domain.model_count(); ++s) {
    double phi = 0.0;
    for (const FeedbackEdge& e : domain.feedback_edges(s)) {
      if (e.target == s) continue;
      phi = std::max(phi, reach_weight(domain, weights, support, s, Response::move(e.target, e.length)));
      if (phi / total >= best.phi) break;
    }
    phi /= total;
    if (phi < best.phi) best = MedianResult{s, phi};
  }
  return best;
}

}  // namespace eqlearn
