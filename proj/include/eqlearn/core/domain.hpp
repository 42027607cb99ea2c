#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "eqlearn/core/feedback_graph.hpp"
#include "eqlearn/core/types.hpp"

namespace eqlearn {

// Capabilities a model domain supplies to the generic learners. Explicit
// domains enumerate their models as dense ids 0..model_count()-1.
//
// Reach membership uses the edge rule: candidate c is consistent with the
// response s -> s' iff d(s, c) == w(s, s') + d(s', c). This coincides with the
// node-on-shortest-path rule whenever d(s, s') == w(s, s'), which holds for
// every shipped domain.
class DomainAdapter {
 public:
  virtual ~DomainAdapter() = default;

  virtual std::string name() const = 0;
  virtual std::size_t model_count() const = 0;
  virtual bool directed() const = 0;

  // Every graph edge out of s, including non-feedback edges.
  virtual std::vector<Edge> edges(ModelId s) const = 0;

  virtual double distance(ModelId from, ModelId to) const = 0;

  // Cycle-ratio constant c: every edge lies on a cycle of length <= c * w(e).
  virtual double cycle_ratio() const { return 2.0; }

  virtual std::vector<FeedbackEdge> feedback_edges(ModelId s) const {
    std::vector<FeedbackEdge> out;
    for (const Edge& e : edges(s))
      if (e.is_feedback) out.push_back(FeedbackEdge{e.target, e.length});
    return out;
  }

  virtual bool reach_contains(ModelId s, const Response& r, ModelId candidate) const {
    if (r.confirmed) return candidate == s;
    double lhs = distance(s, candidate);
    double rhs = r.length + distance(r.feedback, candidate);
    if (std::isinf(lhs) || std::isinf(rhs)) return false;
    return std::abs(lhs - rhs) <= kLengthTol * std::max(1.0, lhs);
  }

  // Gamma(s) = sum_t d(s, t) * w(t) for every s. Domains with a decomposable
  // metric override this with a faster route.
  virtual std::vector<double> gamma_all(std::span<const double> weights) const {
    std::vector<ModelId> support;
    for (ModelId t = 0; t < weights.size(); ++t)
      if (weights[t] > 0.0) support.push_back(t);
    std::vector<double> out(model_count(), 0.0);
    for (ModelId s = 0; s < model_count(); ++s) {
      double acc = 0.0;
      for (ModelId t : support) acc += distance(s, t) * weights[t];
      out[s] = acc;
    }
    return out;
  }

  // Budget inputs for sampled medians. Defaults enumerate the domain.
  virtual std::size_t max_feedback_degree() const {
    std::size_t best = 0;
    for (ModelId s = 0; s < model_count(); ++s) best = std::max(best, feedback_edges(s).size());
    return best;
  }
  virtual double diameter() const {
    double best = 0.0;
    for (ModelId s = 0; s < model_count(); ++s)
      for (ModelId t = 0; t < model_count(); ++t) best = std::max(best, distance(s, t));
    return best;
  }
  virtual double min_edge_length() const {
    double best = kInfinity;
    for (ModelId s = 0; s < model_count(); ++s)
      for (const FeedbackEdge& e : feedback_edges(s)) best = std::min(best, e.length);
    return best;
  }

  bool is_feedback_edge(ModelId s, ModelId t, double length) const {
    for (const FeedbackEdge& e : feedback_edges(s))
      if (e.target == t && std::abs(e.length - length) <= kLengthTol) return true;
    return false;
  }
};

inline FeedbackGraph build_graph(const DomainAdapter& domain) {
  FeedbackGraph g(domain.model_count(), domain.directed());
  for (ModelId s = 0; s < domain.model_count(); ++s)
    for (const Edge& e : domain.edges(s)) g.add_edge(s, e.target, e.length, e.is_feedback);
  return g;
}

// Adapter over an explicit FeedbackGraph with Dijkstra-backed distances.
// Used as the independent route when cross-checking closed-form domains.
class GraphDomain final : public DomainAdapter {
 public:
  explicit GraphDomain(FeedbackGraph graph, double cycle_ratio = 2.0, std::string name = "graph")
      : graph_(std::move(graph)),
        apsp_(all_pairs_distances(graph_)),
        cycle_ratio_(cycle_ratio),
        name_(std::move(name)) {}

  std::string name() const override { return name_; }
  std::size_t model_count() const override { return graph_.node_count(); }
  bool directed() const override { return graph_.directed(); }
  std::vector<Edge> edges(ModelId s) const override { return graph_.edges(s); }
  double distance(ModelId from, ModelId to) const override { return apsp_.at(from).at(to); }
  double cycle_ratio() const override { return cycle_ratio_; }

  const FeedbackGraph& graph() const { return graph_; }
  const std::vector<std::vector<double>>& apsp() const { return apsp_; }

 private:
  FeedbackGraph graph_;
  std::vector<std::vector<double>> apsp_;
  double cycle_ratio_;
  std::string name_;
};

}  // namespace eqlearn
