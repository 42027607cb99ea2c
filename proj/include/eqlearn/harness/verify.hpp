#pragma once

#include <functional>
#include <string>
#include <vector>

#include "eqlearn/classify/hyperplane.hpp"
#include "eqlearn/clustering/clustering_space.hpp"
#include "eqlearn/core/potential.hpp"
#include "eqlearn/ranking/adversary.hpp"
#include "eqlearn/ranking/permutation_space.hpp"
#include "eqlearn/ranking/swap_witness.hpp"

namespace eqlearn::harness {

struct VerifyCheck {
  std::string scope;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool ok() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

namespace detail {

inline std::vector<double> random_weights(std::size_t n, Rng& rng) {
  std::vector<double> w(n);
  for (double& x : w) x = uniform_real(rng);
  return w;
}

// Closed-form distances and Reach versus Dijkstra on the explicit graph.
inline std::string cross_check_domain(const DomainAdapter& domain) {
  GraphDomain g(build_graph(domain));
  std::size_t bad = 0;
  for (ModelId a = 0; a < domain.model_count(); ++a)
    for (ModelId b = 0; b < domain.model_count(); ++b)
      if (domain.distance(a, b) != g.distance(a, b)) ++bad;
  for (ModelId s = 0; s < domain.model_count(); ++s)
    for (const FeedbackEdge& e : domain.feedback_edges(s)) {
      Response r = Response::move(e.target, e.length);
      for (ModelId c = 0; c < domain.model_count(); ++c)
        if (domain.reach_contains(s, r, c) != g.reach_contains(s, r, c)) ++bad;
    }
  return bad ? std::to_string(bad) + " mismatches" : "";
}

inline std::string median_bound_check(const DomainAdapter& domain, std::size_t draws, Rng& rng) {
  double limit = domain.directed() ? 1.0 - 1.0 / domain.cycle_ratio() : 0.5;
  double worst = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    auto w = random_weights(domain.model_count(), rng);
    worst = std::max(worst, exact_median(domain, w).phi);
  }
  if (worst > limit + 1e-12) return "worst Phi " + std::to_string(worst) + " exceeds " + std::to_string(limit);
  return "";
}

}  // namespace detail

// Deterministic seeded property checks. Scope: core | ranking | clustering |
// classify | all.
inline VerifyReport verify_suite(const std::string& scope, std::uint64_t seed = 1) {
  if (scope != "core" && scope != "ranking" && scope != "clustering" && scope != "classify" && scope != "all")
    throw ConfigError("verify: scope must be core|ranking|clustering|classify|all");
  VerifyReport report;
  Rng rng(seed);
  auto run = [&](const std::string& sc, const std::string& name, const std::function<std::string()>& body) {
    if (scope != "all" && scope != sc) return;
    VerifyCheck c{sc, name, false, ""};
    try {
      c.detail = body();
      c.passed = c.detail.empty();
    } catch (const std::exception& e) {
      c.detail = std::string("exception: ") + e.what();
    }
    report.checks.push_back(std::move(c));
  };

  run("core", "median Phi bound on undirected graphs", [&] {
    ranking::PermutationSpace bs(4, ranking::FeedbackKind::bubble);
    classify::HypercubeSpace cube(4);
    std::string out = detail::median_bound_check(bs, 100, rng);
    return out.empty() ? detail::median_bound_check(cube, 100, rng) : out;
  });
  run("core", "hypercube reach equals Dijkstra reach", [&] { return detail::cross_check_domain(classify::HypercubeSpace(3)); });
  run("core", "empty weights are rejected", [&]() -> std::string {
    classify::HypercubeSpace cube(2);
    std::vector<double> zero(cube.model_count(), 0.0);
    try {
      exact_median(cube, zero);
    } catch (const ConfigError&) {
      return "";
    }
    return "zero total weight was accepted";
  });
  run("core", "noiseless learner within log2 N0 on the hypercube", [&]() -> std::string {
    classify::HypercubeSpace cube(3);
    std::vector<ModelId> all(cube.model_count());
    for (ModelId s = 0; s < all.size(); ++s) all[s] = s;
    for (ModelId t = 0; t < all.size(); ++t) {
      SimulatedOracle o(cube, t, OracleConfig{1.0, NoiseModel::uniform, ValidChoice::adversarial_valid, t});
      auto r = learn_noiseless(cube, all, o, gamma_selector(cube));
      if (r.model != t || r.queries > 3) return "target " + std::to_string(t) + " failed";
    }
    return "";
  });

  run("ranking", "bubble distances equal Kendall tau (n <= 4)", [&] {
    std::string out;
    for (int n = 1; n <= 4 && out.empty(); ++n) out = detail::cross_check_domain(ranking::PermutationSpace(n, ranking::FeedbackKind::bubble));
    return out;
  });
  run("ranking", "insertion distances equal Kendall tau (n <= 4)", [&] {
    std::string out;
    for (int n = 1; n <= 4 && out.empty(); ++n) out = detail::cross_check_domain(ranking::PermutationSpace(n, ranking::FeedbackKind::insertion));
    return out;
  });
  run("ranking", "arbitrary-swap witness (n = 3, 4)", [&]() -> std::string {
    for (int n : {3, 4})
      if (!ranking::ArbitrarySwapWitness(n).certify_all()) return "certificate failed at n=" + std::to_string(n);
    return "";
  });
  run("ranking", "linear-extension kernel is symmetric (n = 4 chain posets)", [&]() -> std::string {
    ranking::PartialOrderConstraints order(4);
    order.add(0, 1);
    order.add(2, 3);
    auto ext = ranking::enumerate_linear_extensions(order);
    for (const auto& a : ext)
      for (const auto& b : ext)
        if (std::abs(ranking::chain_transition_probability(order, a, b) -
                     ranking::chain_transition_probability(order, b, a)) > 1e-15)
          return "asymmetric kernel entry";
    return "";
  });
  run("ranking", "adversary consistency (n = 8, bubble-fix)", [&]() -> std::string {
    ranking::LowerBoundAdversary adv(8);
    ranking::Permutation q = ranking::Permutation::identity(8);
    std::size_t queries = 0;
    while (true) {
      auto f = adv.respond(q);
      ++queries;
      if (f.confirmed) break;
      q = q.shifted(f.from, f.to);
      if (queries > 64) return "no convergence";
    }
    if (queries - 1 < ranking::lower_bound_queries(8)) return "fewer queries than the recurrence floor";
    if (!adv.consistent_with(adv.committed_permutation())) return "inconsistent transcript";
    return "";
  });

  run("clustering", "uc/gc distances equal Dijkstra (n <= 4)", [&] {
    std::string out;
    for (int n = 1; n <= 4 && out.empty(); ++n) {
      out = detail::cross_check_domain(clustering::ClusteringSpace(n, clustering::SplitMode::unspecified));
      if (out.empty()) out = detail::cross_check_domain(clustering::ClusteringSpace(n, clustering::SplitMode::specified));
    }
    return out;
  });
  run("clustering", "greedy median Phi <= 1/2 (n = 4)", [&]() -> std::string {
    clustering::ClusteringSpace uc(4, clustering::SplitMode::unspecified);
    for (int i = 0; i < 100; ++i) {
      auto w = detail::random_weights(uc.model_count(), rng);
      double phi = potential(uc, w, clustering::greedy_uc_median(uc, w));
      if (phi > 0.5 + 1e-12) return "Phi " + std::to_string(phi);
    }
    return "";
  });

  run("classify", "XOR square realises 14 of 16 labelings", [&]() -> std::string {
    auto pts = classify::PointSet::make(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
    auto fam = classify::enumerate_hyperplane_family(pts);
    return fam.size() == 14 ? "" : "got " + std::to_string(fam.size());
  });
  run("classify", "hyperplane median Phi <= (d+1)/(d+2)", [&]() -> std::string {
    for (std::size_t d : {1u, 2u}) {
      std::vector<classify::Point> raw;
      for (int i = 0; i < 6; ++i) {
        classify::Point p(d);
        for (double& x : p) x = uniform_real(rng);
        raw.push_back(p);
      }
      auto pts = classify::PointSet::make(d, raw);
      auto fam = classify::enumerate_hyperplane_family(pts);
      classify::HypercubeSpace cube(static_cast<int>(pts.size()));
      for (int i = 0; i < 20; ++i) {
        std::vector<double> w(cube.model_count(), 0.0);
        for (const auto& c : fam) w[c.labels] = uniform_real(rng);
        double phi = potential(cube, w, classify::hyperplane_median(pts, w).labels);
        if (phi > static_cast<double>(d + 1) / (d + 2) + 1e-9) return "Phi " + std::to_string(phi);
      }
    }
    return "";
  });
  run("classify", "Caratheodory subsets within d + 2", [&]() -> std::string {
    for (int i = 0; i < 50; ++i) {
      std::vector<classify::Point> P, Q;
      for (int k = 0; k < 4; ++k) P.push_back({uniform_real(rng), uniform_real(rng)});
      for (int k = 0; k < 4; ++k) Q.push_back({uniform_real(rng), uniform_real(rng)});
      auto r = classify::caratheodory_pair(P, Q, 2);
      if (r.intersect && r.p_subset.size() + r.q_subset.size() > 4) return "subset too large";
      if (!r.intersect && !r.certificate) return "neither intersection nor certificate";
    }
    return "";
  });
  return report;
}

}  // namespace eqlearn::harness
