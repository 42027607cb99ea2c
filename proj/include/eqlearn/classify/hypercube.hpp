#pragma once

#include <bit>
#include <span>
#include <string>
#include <vector>

#include "eqlearn/core/domain.hpp"
#include "eqlearn/core/oracle.hpp"

namespace eqlearn::classify {

// Binary labels for n sample points; model id = labels read as a bitmask
// with point i in bit i.
using LabelVector = std::vector<int>;

inline ModelId to_model(const LabelVector& labels) {
  ModelId id = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) throw ConfigError("labels must be 0 or 1");
    if (labels[i]) id |= ModelId{1} << i;
  }
  return id;
}

inline LabelVector to_labels(ModelId id, int n) {
  LabelVector out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[i] = static_cast<int>((id >> i) & 1U);
  return out;
}

inline std::string labels_str(ModelId id, int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s += ((id >> i) & 1U) ? '1' : '0';
  return s;
}

// The n-dimensional hypercube: a response corrects one point's label.
class HypercubeSpace final : public DomainAdapter {
 public:
  static constexpr int kMaxPoints = 20;

  explicit HypercubeSpace(int n) : n_(n) {
    if (n < 0 || n > kMaxPoints) throw ConfigError("HypercubeSpace: n must lie in 0..20");
  }

  int points() const { return n_; }
  std::string name() const override { return "classify-hypercube"; }
  std::size_t model_count() const override { return std::size_t{1} << n_; }
  bool directed() const override { return false; }

  std::vector<Edge> edges(ModelId s) const override {
    std::vector<Edge> out;
    for (int i = 0; i < n_; ++i) out.push_back(Edge{s ^ (ModelId{1} << i), 1.0, true});
    return out;
  }

  double distance(ModelId a, ModelId b) const override { return static_cast<double>(std::popcount(a ^ b)); }

  // Flipping point i is consistent with exactly the label vectors that agree
  // with the corrected label on i.
  bool reach_contains(ModelId s, const Response& r, ModelId c) const override {
    if (r.confirmed || r.feedback == s) return c == s;
    ModelId flip = s ^ r.feedback;
    if (std::popcount(flip) != 1) return DomainAdapter::reach_contains(s, r, c);
    return (c & flip) == (r.feedback & flip);
  }

  std::vector<double> gamma_all(std::span<const double> weights) const override {
    std::vector<double> ones(static_cast<std::size_t>(n_), 0.0);
    double total = 0.0;
    for (ModelId t = 0; t < weights.size(); ++t) {
      if (!(weights[t] > 0.0)) continue;
      total += weights[t];
      for (int i = 0; i < n_; ++i)
        if ((t >> i) & 1U) ones[i] += weights[t];
    }
    std::vector<double> out(model_count(), 0.0);
    for (ModelId s = 0; s < out.size(); ++s) {
      double acc = 0.0;
      for (int i = 0; i < n_; ++i) acc += ((s >> i) & 1U) ? total - ones[i] : ones[i];
      out[s] = acc;
    }
    return out;
  }

  std::size_t max_feedback_degree() const override { return static_cast<std::size_t>(n_); }
  double diameter() const override { return static_cast<double>(n_); }
  double min_edge_length() const override { return 1.0; }

 private:
  int n_;
};

}  // namespace eqlearn::classify
