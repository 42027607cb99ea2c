#pragma once

#include <algorithm>
#include <bit>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "eqlearn/clustering/clustering.hpp"
#include "eqlearn/core/domain.hpp"
#include "eqlearn/core/learners.hpp"
#include "eqlearn/core/oracle.hpp"

namespace eqlearn::clustering {

enum class SplitMode { unspecified, specified };

inline SplitMode parse_split_mode(const std::string& s) {
  if (s == "unspecified") return SplitMode::unspecified;
  if (s == "specified") return SplitMode::specified;
  throw ConfigError("unknown clustering feedback '" + s + "' (expected unspecified|specified)");
}

// Explicit space of all partitions of n items.
//
// unspecified: directed. Merge(A, B) has length 2; Split(A) breaks A into
//   singletons with length 1. Cycle ratio 3n.
// specified: undirected. Merging A and B, or splitting A u B into A and B,
//   has length 2|A||B|. Distances are co-clustering Hamming distances.
class ClusteringSpace final : public DomainAdapter {
 public:
  static constexpr int kMaxItems = 8;

  ClusteringSpace(int n, SplitMode mode) : n_(n), mode_(mode) {
    if (n < 1 || n > kMaxItems) throw ConfigError("ClusteringSpace: n must lie in 1..8");
    models_ = enumerate_clusterings(n);
    for (ModelId s = 0; s < models_.size(); ++s) index_.emplace(models_[s].labels(), s);
  }

  int items() const { return n_; }
  SplitMode mode() const { return mode_; }
  const Clustering& model(ModelId s) const { return models_.at(s); }
  const std::vector<Clustering>& models() const { return models_; }
  ModelId id_of(const Clustering& c) const {
    auto it = index_.find(c.labels());
    if (it == index_.end()) throw ConfigError("ClusteringSpace: clustering has the wrong item count");
    return it->second;
  }

  std::string name() const override {
    return mode_ == SplitMode::unspecified ? "clustering-unspecified" : "clustering-specified";
  }
  std::size_t model_count() const override { return models_.size(); }
  bool directed() const override { return mode_ == SplitMode::unspecified; }
  double cycle_ratio() const override { return mode_ == SplitMode::unspecified ? 3.0 * n_ : 2.0; }

  std::vector<Edge> edges(ModelId s) const override {
    const Clustering& c = models_.at(s);
    const int k = c.block_count();
    std::vector<Edge> out;
    if (mode_ == SplitMode::unspecified) {
      for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) out.push_back(Edge{id_of(c.merged(a, b)), 2.0, true});
      auto masks = c.block_masks();
      for (int a = 0; a < k; ++a)
        if (std::popcount(masks[a]) > 1) out.push_back(Edge{id_of(c.broken(a)), 1.0, true});
      return out;
    }
    auto masks = c.block_masks();
    for (int a = 0; a < k; ++a)
      for (int b = a + 1; b < k; ++b)
        out.push_back(Edge{id_of(c.merged(a, b)), 2.0 * std::popcount(masks[a]) * std::popcount(masks[b]), true});
    for (int a = 0; a < k; ++a) {
      // Two-way splits; fixing the lowest item on the staying side lists each once.
      std::uint64_t m = masks[a];
      std::uint64_t low = m & (~m + 1);
      std::uint64_t rest = m & ~low;
      for (std::uint64_t part = rest; part; part = (part - 1) & rest) {
        double len = 2.0 * std::popcount(part) * std::popcount(m & ~part);
        out.push_back(Edge{id_of(c.split(a, part)), len, true});
      }
    }
    return out;
  }

  double distance(ModelId a, ModelId b) const override {
    return mode_ == SplitMode::unspecified ? uc_distance(models_.at(a), models_.at(b))
                                           : gc_distance(models_.at(a), models_.at(b));
  }

  // Specified mode decomposes over item pairs.
  std::vector<double> gamma_all(std::span<const double> weights) const override {
    if (mode_ == SplitMode::unspecified) return DomainAdapter::gamma_all(weights);
    const std::size_t n = static_cast<std::size_t>(n_);
    std::vector<double> together(n * n, 0.0);
    double total = 0.0;
    for (ModelId t = 0; t < weights.size(); ++t) {
      if (!(weights[t] > 0.0)) continue;
      total += weights[t];
      for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
          if (models_[t].together(i, j)) together[i * n + j] += weights[t];
    }
    std::vector<double> out(models_.size(), 0.0);
    for (ModelId s = 0; s < models_.size(); ++s) {
      double acc = 0.0;
      for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
          acc += models_[s].together(i, j) ? total - together[i * n + j] : together[i * n + j];
      out[s] = 2.0 * acc;
    }
    return out;
  }

 private:
  int n_;
  SplitMode mode_;
  std::vector<Clustering> models_;
  std::map<std::vector<int>, ModelId> index_;
};

// Start from singletons and keep merging any two clusters whose union is
// co-clustered by more than half of the weight. The result has Phi <= 1/2 in
// the unspecified-split graph.
inline ModelId greedy_uc_median(const ClusteringSpace& space, std::span<const double> weights) {
  check_weights(space, weights);
  const double total = total_weight(weights);
  if (!(total > 0.0)) throw ConfigError("greedy median: total weight must be positive");
  auto support = weight_support(weights);
  Clustering c = Clustering::singletons(space.items());
  bool changed = true;
  while (changed) {
    changed = false;
    auto masks = c.block_masks();
    for (int a = 0; a < c.block_count() && !changed; ++a)
      for (int b = a + 1; b < c.block_count() && !changed; ++b) {
        std::uint64_t u = masks[a] | masks[b];
        double w = 0.0;
        for (ModelId t : support) {
          const Clustering& m = space.model(t);
          int first = std::countr_zero(u);
          bool grouped = true;
          for (int i = 0; i < space.items() && grouped; ++i)
            if (((u >> i) & 1U) && !m.together(first, i)) grouped = false;
          if (grouped) w += weights[t];
        }
        if (w > 0.5 * total) {
          c = c.merged(a, b);
          changed = true;
        }
      }
  }
  return space.id_of(c);
}

inline MedianSelector greedy_selector(const ClusteringSpace& space) {
  return [&space](std::span<const double> w) { return greedy_uc_median(space, w); };
}

// Candidate clusters (item bitmasks) plus the target cluster count.
struct ClusterFamily {
  int n = 0;
  std::vector<std::uint64_t> clusters;
  int k = 1;
  bool exactly_k = false;
};

inline ClusterFamily family_all(int n, int k) {
  ClusterFamily f{n, {}, k, false};
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) f.clusters.push_back(m);
  return f;
}

// Contiguous runs of items on a line.
inline ClusterFamily family_intervals(int n, int k) {
  ClusterFamily f{n, {}, k, false};
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      std::uint64_t m = 0;
      for (int i = a; i <= b; ++i) m |= std::uint64_t{1} << i;
      f.clusters.push_back(m);
    }
  return f;
}

// One cluster per line as whitespace-separated item indices.
inline ClusterFamily family_from_stream(std::istream& in, int n, int k) {
  ClusterFamily f{n, {}, k, false};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::uint64_t m = 0;
    std::string tok;
    while (ls >> tok) {
      int x = 0;
      try {
        std::size_t used = 0;
        x = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ConfigError("family file line " + std::to_string(lineno) + ": bad item '" + tok + "'");
      }
      if (x < 0 || x >= n) throw ConfigError("family file line " + std::to_string(lineno) + ": item out of range");
      m |= std::uint64_t{1} << x;
    }
    if (m) f.clusters.push_back(m);
  }
  return f;
}

inline ClusterFamily family_from_file(const std::string& path, int n, int k) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open family file '" + path + "'");
  return family_from_stream(in, n, k);
}

// Ids of admissible clusterings: every block is a family member and the
// block count is at most k (exactly k when requested).
inline std::vector<ModelId> restricted_space(const ClusteringSpace& space, const ClusterFamily& family) {
  if (family.n != space.items()) throw ConfigError("restricted_space: family item count differs from the space");
  std::vector<std::uint64_t> sorted = family.clusters;
  std::sort(sorted.begin(), sorted.end());
  std::vector<ModelId> out;
  for (ModelId s = 0; s < space.model_count(); ++s) {
    const Clustering& c = space.model(s);
    if (c.block_count() > family.k || (family.exactly_k && c.block_count() != family.k)) continue;
    bool ok = true;
    for (std::uint64_t m : c.block_masks())
      if (!std::binary_search(sorted.begin(), sorted.end(), m)) ok = false;
    if (ok) out.push_back(s);
  }
  if (out.empty()) throw ConfigError("restricted_space: no admissible clustering");
  return out;
}

inline SimulatedOracle make_clustering_oracle(const ClusteringSpace& space, const Clustering& target,
                                              OracleConfig config) {
  return SimulatedOracle(space, space.id_of(target), config);
}

struct SplitBaselineResult {
  ModelId model = kNoModel;
  std::size_t queries = 0;
  bool confirmed = false;
};

// Specified-split baseline: start from one cluster and follow every reported
// split until k clusters exist. At p = 1 this uses at most k - 1 queries.
inline SplitBaselineResult trivial_split_learner(const ClusteringSpace& space, Oracle& oracle, int k) {
  if (space.mode() != SplitMode::specified) throw ConfigError("split baseline needs specified-split feedback");
  SplitBaselineResult res;
  res.model = space.id_of(Clustering::one_cluster(space.items()));
  const std::size_t cap = static_cast<std::size_t>(space.items()) * 4;
  while (space.model(res.model).block_count() < k) {
    if (res.queries >= cap) throw InvariantError("split baseline: query cap exceeded");
    Response r = oracle.respond(res.model, {});
    ++res.queries;
    if (r.confirmed) {
      res.confirmed = true;
      break;
    }
    res.model = r.feedback;
  }
  return res;
}

}  // namespace eqlearn::clustering
