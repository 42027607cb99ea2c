#pragma once

#include <algorithm>
#include <functional>
#include <queue>
#include <utility>
#include <vector>

#include "eqlearn/core/types.hpp"

namespace eqlearn {

// Explicit node-indexed model space with directed, positively weighted
// edges. Undirected graphs store both orientations with equal lengths.
class FeedbackGraph {
 public:
  FeedbackGraph(std::size_t node_count, bool directed)
      : adjacency_(node_count), directed_(directed) {
    if (node_count == 0) throw ConfigError("FeedbackGraph: node_count must be positive");
  }

  // Adds the single orientation s -> t; callers add both for undirected graphs.
  void add_edge(ModelId s, ModelId t, double length, bool is_feedback = true) {
    check_node(s);
    check_node(t);
    if (!(length > 0.0)) throw ConfigError("FeedbackGraph: edge lengths must be positive");
    adjacency_[s].push_back(Edge{t, length, is_feedback});
  }

  std::size_t node_count() const { return adjacency_.size(); }
  bool directed() const { return directed_; }
  const std::vector<Edge>& edges(ModelId s) const {
    check_node(s);
    return adjacency_[s];
  }

  std::vector<FeedbackEdge> feedback_edges(ModelId s) const {
    std::vector<FeedbackEdge> out;
    for (const Edge& e : edges(s))
      if (e.is_feedback) out.push_back(FeedbackEdge{e.target, e.length});
    return out;
  }

  std::size_t edge_count() const {
    std::size_t total = 0;
    for (const auto& a : adjacency_) total += a.size();
    return total;
  }

 private:
  void check_node(ModelId s) const {
    if (s >= adjacency_.size()) throw ConfigError("FeedbackGraph: model index out of range");
  }

  std::vector<std::vector<Edge>> adjacency_;
  bool directed_;
};

// Single-source shortest-path lengths; unreachable nodes are kInfinity.
inline std::vector<double> distances_from(const FeedbackGraph& graph, ModelId source) {
  std::vector<double> dist(graph.node_count(), kInfinity);
  using Item = std::pair<double, ModelId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> frontier;
  dist.at(source) = 0.0;
  frontier.emplace(0.0, source);
  while (!frontier.empty()) {
    auto [d, u] = frontier.top();
    frontier.pop();
    if (d > dist[u]) continue;
    for (const Edge& e : graph.edges(u)) {
      double nd = d + e.length;
      if (nd < dist[e.target]) {
        dist[e.target] = nd;
        frontier.emplace(nd, e.target);
      }
    }
  }
  return dist;
}

inline std::vector<std::vector<double>> all_pairs_distances(const FeedbackGraph& graph) {
  std::vector<std::vector<double>> out;
  out.reserve(graph.node_count());
  for (ModelId s = 0; s < graph.node_count(); ++s) out.push_back(distances_from(graph, s));
  return out;
}

// Brute-force check that every edge e lies on a cycle of length <= c * w(e).
// Returns the largest observed ratio (cycle length / edge length).
inline double max_cycle_ratio(const FeedbackGraph& graph,
                              const std::vector<std::vector<double>>& apsp) {
  double worst = 0.0;
  for (ModelId s = 0; s < graph.node_count(); ++s) {
    for (const Edge& e : graph.edges(s)) {
      double back = apsp[e.target][s];
      worst = std::max(worst, (back + e.length) / e.length);
    }
  }
  return worst;
}

}  // namespace eqlearn
