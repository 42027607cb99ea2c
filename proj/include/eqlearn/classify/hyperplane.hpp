#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "eqlearn/classify/geometry.hpp"
#include "eqlearn/classify/hypercube.hpp"
#include "eqlearn/core/learners.hpp"

namespace eqlearn::classify {

struct HyperplaneConcept {
  Hyperplane plane;
  ModelId labels = 0;  // induced label vector as a hypercube model id
};

inline ModelId induced_labels(const PointSet& pts, const Hyperplane& h) {
  ModelId id = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (h.label(pts.points[i])) id |= ModelId{1} << i;
  return id;
}

// Number of affine dichotomies of n points in general position in R^d:
// 2 * sum_{k <= d} C(n-1, k).
inline std::size_t cover_count(std::size_t n, std::size_t d) {
  if (n == 0) return 1;
  std::size_t total = 0;
  std::size_t binom = 1;  // C(n-1, k)
  for (std::size_t k = 0; k <= d && k <= n - 1; ++k) {
    total += binom;
    binom = binom * (n - 1 - k) / (k + 1);
  }
  return 2 * total;
}

// Every labelling realisable by a hyperplane with positive margin, with a
// witness, in increasing label-vector order. One LP per dichotomy.
inline std::vector<HyperplaneConcept> enumerate_hyperplane_family(const PointSet& pts) {
  const std::size_t n = pts.size();
  if (n > 16) throw ConfigError("enumerate_hyperplane_family: at most 16 points");
  std::vector<HyperplaneConcept> out;
  for (ModelId m = 0; m < (ModelId{1} << n); ++m) {
    std::vector<Point> neg, pos;
    for (std::size_t i = 0; i < n; ++i) ((m >> i) & 1U ? pos : neg).push_back(pts.points[i]);
    auto sep = separate(neg, pos, pts.d);
    if (!sep) continue;
    if (induced_labels(pts, sep->plane) != m) throw InvariantError("family enumeration: witness disagrees with its labelling");
    out.push_back(HyperplaneConcept{sep->plane, m});
  }
  return out;
}

inline std::vector<ModelId> family_ids(const std::vector<HyperplaneConcept>& family) {
  std::vector<ModelId> ids;
  for (const auto& c : family) ids.push_back(c.labels);
  return ids;
}

struct HyperplaneMedian {
  HyperplaneConcept median;
  std::vector<double> phi_label;  // weighted average label per point
  std::vector<std::size_t> low;   // P: average label below 1/(d+2)
  std::vector<std::size_t> high;  // Q: average label above 1 - 1/(d+2)
};

// Proper median: separate the points most concepts call 0 from the points
// most concepts call 1. `weights` is indexed by hypercube model id.
inline HyperplaneMedian hyperplane_median_detail(const PointSet& pts, std::span<const double> weights) {
  const std::size_t n = pts.size();
  if (weights.size() != (std::size_t{1} << n)) throw ConfigError("hyperplane median: weight vector must cover the hypercube");
  double total = 0.0;
  HyperplaneMedian out;
  out.phi_label.assign(n, 0.0);
  for (ModelId t = 0; t < weights.size(); ++t) {
    if (weights[t] < 0.0) throw ConfigError("hyperplane median: negative weight");
    if (!(weights[t] > 0.0)) continue;
    total += weights[t];
    for (std::size_t i = 0; i < n; ++i)
      if ((t >> i) & 1U) out.phi_label[i] += weights[t];
  }
  if (!(total > 0.0)) throw ConfigError("hyperplane median: total weight must be positive");
  const double cut = 1.0 / static_cast<double>(pts.d + 2);
  std::vector<Point> P, Q;
  for (std::size_t i = 0; i < n; ++i) {
    out.phi_label[i] /= total;
    if (out.phi_label[i] < cut) {
      out.low.push_back(i);
      P.push_back(pts.points[i]);
    } else if (out.phi_label[i] > 1.0 - cut) {
      out.high.push_back(i);
      Q.push_back(pts.points[i]);
    }
  }
  auto sep = separate(P, Q, pts.d);
  if (!sep) throw InvariantError("hyperplane median: the low and high point sets are not separable");
  out.median.plane = sep->plane;
  out.median.labels = induced_labels(pts, sep->plane);
  return out;
}

inline HyperplaneConcept hyperplane_median(const PointSet& pts, std::span<const double> weights) {
  return hyperplane_median_detail(pts, weights).median;
}

// Same, with weights given per family member.
inline HyperplaneConcept hyperplane_median(const PointSet& pts, const std::vector<HyperplaneConcept>& family,
                                           std::span<const double> family_weights) {
  if (family.size() != family_weights.size()) throw ConfigError("hyperplane median: one weight per family member");
  std::vector<double> cube(std::size_t{1} << pts.size(), 0.0);
  for (std::size_t k = 0; k < family.size(); ++k) cube[family[k].labels] += family_weights[k];
  return hyperplane_median(pts, cube);
}

inline MedianSelector hyperplane_selector(const PointSet& pts) {
  return [&pts](std::span<const double> w) { return hyperplane_median(pts, w).labels; };
}

// ceil(log_{(d+2)/(d+1)} M).
inline std::size_t proper_hyperplane_bound(std::size_t family_size, std::size_t d) {
  return noiseless_query_bound(family_size, static_cast<double>(d + 1) / static_cast<double>(d + 2));
}

struct ProperLearnResult {
  std::optional<ModelId> model;
  std::size_t queries = 0;
  Transcript transcript;
};

// Halving (p = 1) or the two-stage noisy learner over the hypercube, started
// on the hyperplane family and querying only hyperplane medians.
inline ProperLearnResult learn_proper_hyperplane(const HypercubeSpace& cube, const PointSet& pts,
                                                 const std::vector<HyperplaneConcept>& family, Oracle& oracle,
                                                 double p = 1.0, double delta = 0.2) {
  auto ids = family_ids(family);
  auto select = hyperplane_selector(pts);
  double beta = static_cast<double>(pts.d + 1) / static_cast<double>(pts.d + 2);
  NoisyResult r = learn_noisy(cube, ids, p, delta, beta, oracle, select);
  return ProperLearnResult{r.model, r.queries, std::move(r.transcript)};
}

}  // namespace eqlearn::classify
