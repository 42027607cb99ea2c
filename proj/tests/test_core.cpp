#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "eqlearn/classify/hypercube.hpp"
#include "eqlearn/clustering/clustering_space.hpp"
#include "eqlearn/core/learners.hpp"
#include "eqlearn/core/sampled_median.hpp"
#include "eqlearn/ranking/permutation_space.hpp"
#include "support/oracles.hpp"

using namespace eqlearn;

namespace {

GraphDomain hexagon() {
  FeedbackGraph g(6, false);
  for (ModelId s = 0; s < 6; ++s) {
    g.add_edge(s, (s + 1) % 6, 1.0);
    g.add_edge(s, (s + 5) % 6, 1.0);
  }
  return GraphDomain(std::move(g));
}

std::vector<ModelId> all_ids(std::size_t n) {
  std::vector<ModelId> v(n);
  std::iota(v.begin(), v.end(), ModelId{0});
  return v;
}

}  // namespace

TEST(Distance, HexagonAntipodeIsThree) {
  auto hex = hexagon();
  EXPECT_EQ(hex.distance(0, 3), 3.0);
  EXPECT_EQ(hex.distance(4, 4), 0.0);
}

TEST(Distance, HypercubeHamming) {
  classify::HypercubeSpace cube(3);
  EXPECT_EQ(cube.distance(0b000, 0b111), 3.0);
  EXPECT_EQ(cube.distance(0b101, 0b101), 0.0);
}

TEST(Reach, HexagonNeighbourCoversHalf) {
  auto hex = hexagon();
  auto r = reach_set(hex, 0, Response::move(1, 1.0));
  std::sort(r.begin(), r.end());
  EXPECT_EQ(r, (std::vector<ModelId>{1, 2, 3}));
  EXPECT_EQ(reach_set(hex, 0, Response::confirm()), std::vector<ModelId>{0});
}

TEST(Reach, HypercubeFlipIsHalfCube) {
  classify::HypercubeSpace cube(3);
  for (int bit = 0; bit < 3; ++bit) {
    ModelId to = ModelId{1} << bit;
    auto r = reach_set(cube, 0, Response::move(to, 1.0));
    ASSERT_EQ(r.size(), 4u);
    for (ModelId c : r) EXPECT_TRUE(c & to);
  }
}

TEST(Reach, AgreesWithShortestPathRuleOnExplicitGraphs) {
  // Closed-form reach_contains versus d(s,c) = w + d(s',c) from Floyd-Warshall.
  ranking::PermutationSpace bs(4, ranking::FeedbackKind::bubble);
  auto pg = oracle::permutation_graph(4, false);
  auto d = oracle::floyd(pg.graph);
  for (std::size_t s = 0; s < pg.nodes.size(); ++s) {
    ModelId ls = bs.id_of(ranking::Permutation(pg.nodes[s]));
    for (auto [t, len] : pg.graph.adj[s]) {
      ModelId lt = bs.id_of(ranking::Permutation(pg.nodes[t]));
      for (std::size_t c = 0; c < pg.nodes.size(); ++c) {
        ModelId lc = bs.id_of(ranking::Permutation(pg.nodes[c]));
        bool expected = std::abs(d[s][c] - (len + d[t][c])) < 1e-9;
        EXPECT_EQ(bs.reach_contains(ls, Response::move(lt, len), lc), expected);
      }
    }
  }
}

TEST(Potential, ExamplesFromFirstPrinciples) {
  auto hex = hexagon();
  std::vector<double> uniform(6, 1.0);
  for (ModelId s = 0; s < 6; ++s) EXPECT_DOUBLE_EQ(potential(hex, uniform, s), 0.5);

  std::vector<double> atom(6, 0.0);
  atom[2] = 1.0;
  EXPECT_DOUBLE_EQ(potential(hex, atom, 2), 0.0);

  classify::HypercubeSpace cube(3);
  std::vector<double> cu(8, 1.0);
  for (ModelId s = 0; s < 8; ++s) EXPECT_DOUBLE_EQ(potential(cube, cu, s), 0.5);
}

TEST(Potential, RejectsZeroWeight) {
  auto hex = hexagon();
  std::vector<double> zero(6, 0.0);
  EXPECT_THROW(potential(hex, zero, 0), ConfigError);
  EXPECT_THROW(exact_median(hex, zero), ConfigError);
  std::vector<double> negative(6, 1.0);
  negative[1] = -1.0;
  EXPECT_THROW(exact_median(hex, negative), ConfigError);
}

TEST(Gamma, UnnormalizedSums) {
  auto hex = hexagon();
  std::vector<double> uniform(6, 1.0);
  EXPECT_DOUBLE_EQ(gamma_potential(hex, uniform, 0), 9.0);
  std::vector<double> atom(6, 0.0);
  atom[4] = 3.0;
  EXPECT_DOUBLE_EQ(gamma_potential(hex, atom, 4), 0.0);
  classify::HypercubeSpace cube(2);
  std::vector<double> cu(4, 1.0);
  EXPECT_DOUBLE_EQ(gamma_potential(cube, cu, 0), 4.0);
}

TEST(Gamma, FastPathMatchesDistanceSum) {
  std::mt19937_64 rng(5);
  ranking::PermutationSpace is(5, ranking::FeedbackKind::insertion);
  clustering::ClusteringSpace gc(5, clustering::SplitMode::specified);
  classify::HypercubeSpace cube(6);
  for (const DomainAdapter* dom : std::initializer_list<const DomainAdapter*>{&is, &gc, &cube}) {
    auto w = oracle::random_weights(dom->model_count(), rng);
    auto fast = dom->gamma_all(w);
    for (ModelId s = 0; s < dom->model_count(); s += 7) {
      double slow = 0.0;
      for (ModelId t = 0; t < dom->model_count(); ++t) slow += w[t] * dom->distance(s, t);
      EXPECT_NEAR(fast[s], slow, 1e-9 * std::max(1.0, slow)) << dom->name();
    }
  }
}

TEST(Median, UndirectedBoundAndAtoms) {
  std::mt19937_64 rng(11);
  auto hex = hexagon();
  for (int i = 0; i < 200; ++i) {
    auto w = oracle::random_weights(6, rng);
    EXPECT_LE(exact_median(hex, w).phi, 0.5 + 1e-12);
  }
  std::vector<double> atom(6, 0.0);
  atom[5] = 1.0;
  auto m = exact_median(hex, atom);
  EXPECT_EQ(m.model, 5u);
  EXPECT_DOUBLE_EQ(m.phi, 0.0);
}

TEST(Median, DirectedClusteringBound) {
  std::mt19937_64 rng(12);
  for (int n : {3, 4}) {
    clustering::ClusteringSpace uc(n, clustering::SplitMode::unspecified);
    ASSERT_TRUE(uc.directed());
    double limit = (3.0 * n - 1.0) / (3.0 * n);
    for (int i = 0; i < 200; ++i) {
      auto w = oracle::random_weights(uc.model_count(), rng);
      EXPECT_LE(exact_median(uc, w).phi, limit + 1e-12);
    }
  }
}

TEST(Domain, ClusteringCycleRatioWithinDeclaredBound) {
  for (int n : {3, 4}) {
    clustering::ClusteringSpace uc(n, clustering::SplitMode::unspecified);
    auto g = build_graph(uc);
    EXPECT_LE(max_cycle_ratio(g, all_pairs_distances(g)), uc.cycle_ratio() + 1e-9);
  }
}

TEST(Likelihood, SingleUpdate) {
  auto ids = all_ids(4);
  LikelihoodState st(4, ids, 0.75);
  st.update([](ModelId s) { return s < 2; });
  auto w = st.weights();
  // Relative weights (0.75, 0.75, 0.25, 0.25).
  EXPECT_NEAR(w[0] / w[2], 3.0, 1e-12);
  EXPECT_NEAR(w[0], 0.375, 1e-12);
  EXPECT_NEAR(w[3], 0.125, 1e-12);
  EXPECT_EQ(st.consistent_count(0), 1u);
  EXPECT_EQ(st.rounds(), 1u);
}

TEST(Likelihood, LongRunsStayFinite) {
  auto ids = all_ids(3);
  LikelihoodState st(3, ids, 0.9);
  for (int i = 0; i < 5000; ++i) st.update([](ModelId s) { return s == 1; });
  auto w = st.weights();
  EXPECT_NEAR(w[1], 1.0, 1e-12);
  EXPECT_TRUE(std::isfinite(st.log_weight(0)));
}

TEST(Noiseless, HypercubeEightModelsAllTargets) {
  classify::HypercubeSpace cube(3);
  auto ids = all_ids(8);
  for (ModelId t = 0; t < 8; ++t)
    for (auto choice : {ValidChoice::uniform_valid, ValidChoice::adversarial_valid}) {
      SimulatedOracle o(cube, t, OracleConfig{1.0, NoiseModel::uniform, choice, t});
      auto r = learn_noiseless(cube, ids, o, gamma_selector(cube));
      EXPECT_EQ(r.model, t);
      EXPECT_LE(r.queries, 3u);
    }
}

TEST(Noiseless, SingletonNeedsNoQuery) {
  classify::HypercubeSpace cube(3);
  std::vector<ModelId> one{5};
  SimulatedOracle o(cube, 5, OracleConfig{});
  auto r = learn_noiseless(cube, one, o, gamma_selector(cube));
  EXPECT_EQ(r.model, 5u);
  EXPECT_EQ(r.queries, 0u);
  EXPECT_EQ(noiseless_query_bound(1, 0.5), 0u);
}

TEST(Noiseless, BubbleFourAllTargetsAndTieBreaks) {
  ranking::PermutationSpace bs(4, ranking::FeedbackKind::bubble);
  auto ids = all_ids(24);
  for (ModelId t = 0; t < 24; ++t) {
    for (std::uint64_t seed = 0; seed < 8; ++seed)
      for (auto choice : {ValidChoice::uniform_valid, ValidChoice::adversarial_valid}) {
        SimulatedOracle o(bs, t, OracleConfig{1.0, NoiseModel::uniform, choice, seed});
        for (const MedianSelector& sel : {gamma_selector(bs), phi_selector(bs)}) {
          auto r = learn_noiseless(bs, ids, o, sel);
          EXPECT_EQ(r.model, t);
          EXPECT_LE(r.queries, 5u);
        }
      }
  }
}

TEST(Noiseless, EmptyInitialSetRejected) {
  classify::HypercubeSpace cube(2);
  SimulatedOracle o(cube, 0, OracleConfig{});
  std::vector<ModelId> none;
  EXPECT_THROW(learn_noiseless(cube, none, o, gamma_selector(cube)), ConfigError);
}

TEST(Oracle, CorrectResponsesLieOnShortestPaths) {
  ranking::PermutationSpace is(4, ranking::FeedbackKind::insertion);
  for (ModelId t = 0; t < 24; t += 5) {
    SimulatedOracle o(is, t, OracleConfig{1.0, NoiseModel::uniform, ValidChoice::uniform_valid, t});
    for (ModelId q = 0; q < 24; ++q) {
      Response r = o.respond(q, {});
      if (q == t) {
        EXPECT_TRUE(r.confirmed);
        continue;
      }
      ASSERT_FALSE(r.confirmed);
      EXPECT_NEAR(is.distance(r.feedback, t), is.distance(q, t) - r.length, 1e-9);
    }
  }
}

TEST(Oracle, NoiseRateMatchesP) {
  ranking::PermutationSpace bs(4, ranking::FeedbackKind::bubble);
  SimulatedOracle o(bs, 0, OracleConfig{0.75, NoiseModel::uniform, ValidChoice::uniform_valid, 3});
  std::size_t correct = 0;
  const std::size_t draws = 10000;
  for (std::size_t i = 0; i < draws; ++i) {
    ModelId q = 1 + i % 23;
    Response r = o.respond(q, {});
    if (!r.confirmed && std::abs(bs.distance(r.feedback, 0) - (bs.distance(q, 0) - r.length)) < 1e-9) ++correct;
  }
  EXPECT_NEAR(static_cast<double>(correct) / draws, 0.75, 0.02);
}

TEST(Schedule, MatchesAlgorithmFormulas) {
  const double p = 0.85, delta = 0.2, beta = 0.5;
  const std::size_t n0 = 120;
  auto s = make_schedule(p, delta, beta, n0);
  double tau = beta * p + (1 - beta) * (1 - p);
  double h = oracle::binary_entropy(p);
  double gap = std::log2(1 / tau) - h;
  double lo = std::log2(p / (1 - p));
  EXPECT_NEAR(s.tau, tau, 1e-15);
  EXPECT_NEAR(s.entropy, h, 1e-15);
  EXPECT_NEAR(s.lambda2, gap / (2 * lo), 1e-15);
  double dp = delta / 5;
  // sqrt(1/loglog 120) is about 0.6, which makes the stage-1 denominator
  // negative here, so lambda1 falls back to lambda2.
  EXPECT_TRUE(s.lambda1_fallback);
  double k = std::max(std::log2(120.0) / (gap - s.lambda2 * lo) + std::log2(1 / tau) / std::log2(1 / dp),
                      std::log(1 / dp) / (s.lambda2 * s.lambda2)) +
             1;
  EXPECT_EQ(s.k1, static_cast<std::size_t>(std::ceil(k)));
  double q = 2 * std::log(3 / dp) / ((2 * p - 1) * (2 * p - 1));
  EXPECT_EQ(verification_repeats(s, 3), static_cast<std::size_t>(std::ceil(q)));
}

TEST(Schedule, RejectsWhenEntropyDominates) {
  // beta = 3/4, p = 0.7: tau = 0.6, log2(1/tau) = 0.74 < H(0.7) = 0.88.
  EXPECT_THROW(make_schedule(0.7, 0.2, 0.75, 64), ConfigError);
  EXPECT_THROW(make_schedule(1.0, 0.2, 0.5, 64), ConfigError);
}

TEST(MultiWeights, HeavyModelMarkedWithoutRounds) {
  classify::HypercubeSpace cube(2);
  std::vector<ModelId> init{3};
  SimulatedOracle o(cube, 3, OracleConfig{0.9, NoiseModel::uniform, ValidChoice::uniform_valid, 1});
  auto r = multiweights(cube, init, 0, 0.9, o, gamma_selector(cube));
  EXPECT_EQ(r.marked, std::vector<ModelId>{3});
}

TEST(MultiWeights, TargetMarkedAfterManyRounds) {
  ranking::PermutationSpace bs(4, ranking::FeedbackKind::bubble);
  auto ids = all_ids(24);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    ModelId t = seed % 24;
    SimulatedOracle o(bs, t, OracleConfig{0.9, NoiseModel::uniform, ValidChoice::uniform_valid, seed});
    auto r = multiweights(bs, ids, 60, 0.9, o, gamma_selector(bs));
    EXPECT_TRUE(std::find(r.marked.begin(), r.marked.end(), t) != r.marked.end()) << "seed " << seed;
  }
}

TEST(Noisy, PerfectOracleRoutesToHalving) {
  classify::HypercubeSpace cube(3);
  auto ids = all_ids(8);
  SimulatedOracle o(cube, 6, OracleConfig{});
  auto r = learn_noisy(cube, ids, 1.0, 0.2, 0.5, o, gamma_selector(cube));
  ASSERT_TRUE(r.model.has_value());
  EXPECT_EQ(*r.model, 6u);
  EXPECT_FALSE(r.schedule.has_value());
  EXPECT_LE(r.queries, 3u);
}

TEST(Noisy, BubbleFiveSuccessRate) {
  ranking::PermutationSpace bs(5, ranking::FeedbackKind::bubble);
  auto ids = all_ids(120);
  std::size_t ok = 0;
  const std::size_t seeds = 200;
  for (std::uint64_t seed = 0; seed < seeds; ++seed) {
    ModelId t = (seed * 37) % 120;
    SimulatedOracle o(bs, t, OracleConfig{0.85, NoiseModel::uniform, ValidChoice::uniform_valid, seed});
    auto r = learn_noisy(bs, ids, 0.85, 0.2, 0.5, o, gamma_selector(bs));
    if (r.model && *r.model == t) ++ok;
    if (r.model) {
      // The returned model won the majority of its verification block.
      std::size_t confirms = 0, block = 0;
      for (auto it = r.transcript.rbegin(); it != r.transcript.rend() && block < r.repeats; ++it, ++block)
        if (it->query == *r.model && it->response.confirmed) ++confirms;
      EXPECT_GE(2 * confirms, r.repeats);
    }
  }
  EXPECT_GE(static_cast<double>(ok) / seeds, 0.8);
}

TEST(SampledMedian, ExactSamplerOnHypercube) {
  classify::HypercubeSpace cube(4);
  std::vector<double> uniform(16, 1.0 / 16);
  auto g = oracle::hypercube_graph(4);
  auto d = oracle::floyd(g);
  int good = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    SampledMedianOptions opt;
    opt.epsilon = 0.1;
    auto r = sampled_median(cube, exact_weight_sampler(uniform), seed % 16, opt, rng);
    if (oracle::phi(g, d, uniform, r.model) <= 0.6) ++good;
  }
  EXPECT_GE(good, 95);
}

TEST(SampledMedian, ConcentratedWeightWalksToTarget) {
  classify::HypercubeSpace cube(5);
  std::vector<double> w(32, 0.0);
  w[0b10110] = 1.0;
  for (ModelId start : {ModelId{0}, ModelId{31}, ModelId{9}}) {
    Rng rng(start);
    auto r = sampled_median(cube, exact_weight_sampler(w), start, SampledMedianOptions{}, rng);
    EXPECT_EQ(r.model, 0b10110u);
  }
}

TEST(SampledMedian, BubbleFiveNearExactMedian) {
  // Uniform weight over the orders consistent with "0 before 1"; samples are
  // exact draws from that distribution.
  ranking::PermutationSpace bs(5, ranking::FeedbackKind::bubble);
  std::vector<double> w(120, 0.0);
  for (ModelId s = 0; s < 120; ++s)
    if (bs.model(s).precedes(0, 1)) w[s] = 1.0;
  double best = exact_median(bs, w).phi;
  const double eps = 0.1;
  int good = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed + 1000);
    SampledMedianOptions opt;
    opt.epsilon = eps;
    auto r = sampled_median(bs, exact_weight_sampler(w), seed % 120, opt, rng);
    if (potential(bs, w, r.model) <= best + eps) ++good;
  }
  EXPECT_GE(good, 95);
}

TEST(SampledMedian, RejectsBadOptions) {
  classify::HypercubeSpace cube(2);
  std::vector<double> w(4, 1.0);
  Rng rng(1);
  SampledMedianOptions opt;
  opt.tv_slack = 0.3;
  EXPECT_THROW(sampled_median(cube, exact_weight_sampler(w), 0, opt, rng), ConfigError);
  clustering::ClusteringSpace uc(3, clustering::SplitMode::unspecified);
  std::vector<double> wu(uc.model_count(), 1.0);
  EXPECT_THROW(sampled_median(uc, exact_weight_sampler(wu), 0, SampledMedianOptions{}, rng), ConfigError);
}
