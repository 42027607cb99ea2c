#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "eqlearn/ranking/adversary.hpp"
#include "eqlearn/ranking/extension_dp.hpp"
#include "eqlearn/ranking/permutation_space.hpp"
#include "eqlearn/ranking/ranker.hpp"
#include "eqlearn/ranking/swap_witness.hpp"
#include "support/oracles.hpp"

using namespace eqlearn;
using namespace eqlearn::ranking;

namespace {

PartialOrderConstraints to_constraints(const oracle::Relation& r, int n) {
  PartialOrderConstraints order(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (r[a][b]) order.add(a, b);
  return order;
}

PartialOrderConstraints random_poset(int n, double density, std::mt19937_64& rng) {
  // Orient random pairs along a hidden order so the result is acyclic.
  std::vector<int> hidden(n);
  for (int i = 0; i < n; ++i) hidden[i] = i;
  std::shuffle(hidden.begin(), hidden.end(), rng);
  std::bernoulli_distribution keep(density);
  PartialOrderConstraints order(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (keep(rng)) order.add(hidden[i], hidden[j]);
  return order;
}

}  // namespace

TEST(Kendall, Examples) {
  EXPECT_EQ(kendall_tau(Permutation({0, 1, 2}), Permutation({0, 1, 2})), 0u);
  EXPECT_EQ(kendall_tau(Permutation({1, 0, 2}), Permutation({0, 1, 2})), 1u);
  EXPECT_EQ(kendall_tau(Permutation({4, 3, 2, 1, 0}), Permutation::identity(5)), 10u);
}

TEST(Permutation, RejectsNonPermutations) {
  EXPECT_THROW(Permutation({0, 0, 1}), ConfigError);
  EXPECT_THROW(Permutation({0, 3}), ConfigError);
}

TEST(Permutation, LexRankRoundTrip) {
  for (int n = 1; n <= 6; ++n)
    for (std::size_t r = 0; r < factorial(n); r += 3) EXPECT_EQ(lex_rank(lex_unrank(n, r)), r);
}

TEST(BubbleGraph, HexagonAtThree) {
  PermutationSpace bs(3, FeedbackKind::bubble);
  ASSERT_EQ(bs.model_count(), 6u);
  for (ModelId s = 0; s < 6; ++s) EXPECT_EQ(bs.feedback_edges(s).size(), 2u);
  // A connected 2-regular graph on 6 nodes with diameter 3 is the 6-cycle.
  double diam = 0;
  for (ModelId a = 0; a < 6; ++a)
    for (ModelId b = 0; b < 6; ++b) diam = std::max(diam, bs.distance(a, b));
  EXPECT_EQ(diam, 3.0);
  PermutationSpace one(1, FeedbackKind::bubble);
  EXPECT_TRUE(one.feedback_edges(0).empty());
}

TEST(InsertionGraph, MoveAndDegree) {
  EXPECT_EQ(Permutation({0, 1, 2}).shifted(2, 0), Permutation({2, 0, 1}));
  for (int n = 2; n <= 5; ++n) {
    PermutationSpace is(n, FeedbackKind::insertion);
    for (ModelId s = 0; s < is.model_count(); ++s)
      EXPECT_EQ(is.feedback_edges(s).size(), static_cast<std::size_t>(n * (n - 1) / 2));
  }
  PermutationSpace is3(3, FeedbackKind::insertion);
  bool found = false;
  for (const auto& e : is3.feedback_edges(is3.id_of(Permutation({0, 1, 2}))))
    if (is3.model(e.target) == Permutation({2, 0, 1})) found = e.length == 2.0;
  EXPECT_TRUE(found);
}

TEST(Distances, KendallEqualsExplicitGraphs) {
  for (bool insertion : {false, true}) {
    for (int n = 1; n <= 5; ++n) {
      auto pg = oracle::permutation_graph(n, insertion);
      auto d = oracle::floyd(pg.graph);
      PermutationSpace space(n, insertion ? FeedbackKind::insertion : FeedbackKind::bubble);
      for (std::size_t a = 0; a < pg.nodes.size(); ++a)
        for (std::size_t b = 0; b < pg.nodes.size(); ++b) {
          Permutation pa(pg.nodes[a]), pb(pg.nodes[b]);
          ASSERT_EQ(static_cast<double>(kendall_tau(pa, pb)), d[a][b]);
          ASSERT_EQ(space.distance(space.id_of(pa), space.id_of(pb)), d[a][b]);
        }
    }
  }
}

TEST(Responder, ConfirmsTargetAndMovesTowardIt) {
  std::mt19937_64 rng(3);
  for (auto kind : {FeedbackKind::bubble, FeedbackKind::insertion}) {
    for (int rep = 0; rep < 50; ++rep) {
      Permutation target = random_permutation(6, rng);
      TargetRankingResponder resp(target, kind, 1.0, rep);
      EXPECT_TRUE(resp.respond(target).confirmed);
      Permutation q = random_permutation(6, rng);
      if (q == target) continue;
      auto f = resp.respond(q);
      ASSERT_FALSE(f.confirmed);
      // The moved item really belongs before every item it jumps over.
      for (int m = f.to; m < f.from; ++m) EXPECT_TRUE(target.precedes(q.at(f.from), q.at(m)));
      EXPECT_EQ(kendall_tau(q.shifted(f.from, f.to), target) + f.length(), kendall_tau(q, target));
    }
  }
}

TEST(Responder, NoiseFrequency) {
  Permutation target = Permutation::identity(5);
  TargetRankingResponder resp(target, FeedbackKind::bubble, 0.75, 9);
  Rng rng(4);
  const int draws = 10000;
  int correct = 0;
  for (int i = 0; i < draws; ++i) {
    Permutation q = random_permutation(5, rng);
    auto f = resp.respond(q);
    auto valid = valid_ranking_moves(q, target, FeedbackKind::bubble);
    if (std::find(valid.begin(), valid.end(), f) != valid.end()) ++correct;
  }
  EXPECT_NEAR(static_cast<double>(correct) / draws, 0.75, 0.02);
}

TEST(Adversary, RecurrenceValues) {
  EXPECT_EQ(lower_bound_queries(2), 0u);
  EXPECT_EQ(lower_bound_queries(8), 4u);
  EXPECT_EQ(lower_bound_queries(16), 12u);  // 4 + 2*2 + 4*1
  EXPECT_EQ(lower_bound_queries(32), 32u);
}

TEST(Adversary, ResponsesConsistentWithCommitment) {
  for (int n : {8, 16}) {
    for (auto strategy : {RankStrategy::exact_dp, RankStrategy::bubble_fix}) {
      LowerBoundAdversary adv(n);
      RankerOptions opt;
      opt.strategy = strategy;
      Rng rng(1);
      auto r = learn_ranking(n, adv, opt, rng);
      ASSERT_TRUE(adv.committed());
      Permutation committed = adv.committed_permutation();
      EXPECT_EQ(r.model, committed);
      EXPECT_GE(r.queries, lower_bound_queries(n));
      // Independent replay: each answer swaps an adjacent pair, and the item
      // moved forward must come first in the committed order.
      for (const auto& [q, f] : r.transcript) {
        if (f.confirmed) {
          EXPECT_EQ(q, committed);
          continue;
        }
        EXPECT_EQ(f.from, f.to + 1);
        EXPECT_TRUE(committed.precedes(q.at(f.from), q.at(f.to)));
      }
    }
  }
}

TEST(LinearExtensions, UniformOnEmptyOrder) {
  PartialOrderConstraints none(3);
  Rng rng(17);
  std::map<std::vector<int>, int> counts;
  const int draws = 6000;
  for (int i = 0; i < draws; ++i) counts[sample_linear_extension(none, 500, rng).items()]++;
  ASSERT_EQ(counts.size(), 6u);
  for (auto& [p, c] : counts) EXPECT_NEAR(static_cast<double>(c) / draws, 1.0 / 6, 0.03);
}

TEST(LinearExtensions, TotalOrderAndChainPlusPoint) {
  PartialOrderConstraints total(3);
  total.add(0, 1);
  total.add(1, 2);
  Rng rng(5);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(sample_linear_extension(total, 50, rng), Permutation::identity(3));

  PartialOrderConstraints chain(3);
  chain.add(0, 1);
  std::map<std::vector<int>, int> counts;
  const int draws = 6000;
  for (int i = 0; i < draws; ++i) counts[sample_linear_extension(chain, 500, rng).items()]++;
  ASSERT_EQ(counts.size(), 3u);
  for (auto& [p, c] : counts) EXPECT_NEAR(static_cast<double>(c) / draws, 1.0 / 3, 0.03);
}

TEST(LinearExtensions, EnumerationMatchesBruteForce) {
  auto posets = oracle::all_posets(4);
  ASSERT_EQ(posets.size(), 219u);
  for (const auto& r : posets) {
    auto order = to_constraints(r, 4);
    auto mine = enumerate_linear_extensions(order);
    auto ref = oracle::linear_extensions(r, 4);
    std::vector<std::vector<int>> got;
    for (const auto& p : mine) got.push_back(p.items());
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, ref);
  }
}

TEST(LinearExtensions, KernelIsSymmetricAndStochastic) {
  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 20; ++rep) {
    auto order = random_poset(5, 0.3, rng);
    auto ext = enumerate_linear_extensions(order);
    for (const auto& a : ext) {
      double row = 0.0;
      for (const auto& b : ext) {
        double pab = chain_transition_probability(order, a, b);
        EXPECT_NEAR(pab, chain_transition_probability(order, b, a), 1e-15);
        row += pab;
      }
      EXPECT_NEAR(row, 1.0, 1e-12);
    }
  }
}

TEST(LinearExtensions, ConstraintCyclesRejected) {
  PartialOrderConstraints order(3);
  order.add(0, 1);
  order.add(1, 2);
  EXPECT_FALSE(order.try_add(2, 0));
  EXPECT_THROW(order.add(2, 0), InvariantError);
}

TEST(ExtensionDp, PrecedenceMatchesEnumeration) {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 30; ++rep) {
    int n = 2 + rep % 5;
    auto order = random_poset(n, 0.25, rng);
    auto ext = enumerate_linear_extensions(order);
    auto m = precedence_matrix(order);
    EXPECT_DOUBLE_EQ(m.extensions, static_cast<double>(ext.size()));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (a == b) continue;
        double count = 0;
        for (const auto& p : ext) count += p.precedes(a, b);
        EXPECT_NEAR(m.at(a, b), count / ext.size(), 1e-12);
      }
  }
}

TEST(ExtensionDp, KemenyMinimisesTotalKendallDistance) {
  std::mt19937_64 rng(22);
  for (int rep = 0; rep < 20; ++rep) {
    int n = 3 + rep % 4;
    auto order = random_poset(n, 0.2, rng);
    auto ext = enumerate_linear_extensions(order);
    auto median = kemeny_median(precedence_matrix(order));
    auto total = [&](const Permutation& p) {
      std::size_t s = 0;
      for (const auto& e : ext) s += kendall_tau(p, e);
      return s;
    };
    std::size_t best = SIZE_MAX;
    for (const auto& p : all_permutations(n)) best = std::min(best, total(p));
    EXPECT_EQ(total(median), best);
  }
}

TEST(Ranker, EfficientNoiselessSixItems) {
  // Reduced sample budget; see the README for the default.
  SampledRankOptions so;
  so.median.budget.samples_per_iteration = 400;
  std::vector<std::size_t> queries;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng(seed);
    Permutation target = random_permutation(6, rng);
    TargetRankingResponder resp(target, FeedbackKind::bubble, 1.0, seed);
    auto r = efficient_noiseless_ranker(6, resp, FeedbackKind::bubble, so, rng);
    EXPECT_EQ(r.model, target);
    EXPECT_TRUE(r.constraints.is_total() || r.confirmed);
    queries.push_back(r.queries);
  }
  std::nth_element(queries.begin(), queries.begin() + 25, queries.end());
  EXPECT_LE(queries[25], 12u);
}

TEST(Ranker, SingleItemNeedsNoQuery) {
  TargetRankingResponder resp(Permutation::identity(1), FeedbackKind::bubble, 1.0, 0);
  Rng rng(0);
  auto r = efficient_noiseless_ranker(1, resp, FeedbackKind::bubble, SampledRankOptions{}, rng);
  EXPECT_EQ(r.queries, 0u);
}

TEST(Ranker, InsertionFeedbackExactMedian) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    Permutation target = random_permutation(7, rng);
    TargetRankingResponder resp(target, FeedbackKind::insertion, 1.0, seed);
    RankerOptions opt;
    opt.kind = FeedbackKind::insertion;
    auto r = learn_ranking(7, resp, opt, rng);
    EXPECT_EQ(r.model, target);
    EXPECT_LE(r.queries, 13u);  // ceil(log2 7!)
  }
}

TEST(SwapWitness, SmallExamples) {
  ArbitrarySwapWitness w(3);
  auto c1 = w.check(Permutation({0, 1, 2}));
  EXPECT_EQ(c1.response, (SwapResponse{2, 0}));
  EXPECT_EQ(c1.consistent_shifts, (std::vector<int>{1, 2}));
  auto c2 = w.check(Permutation({1, 0, 2}));
  EXPECT_EQ(c2.response, (SwapResponse{0, 1}));
  EXPECT_EQ(c2.consistent_shifts, (std::vector<int>{0, 2}));
}

TEST(SwapWitness, ExhaustiveCertificate) {
  for (int n : {3, 4}) {
    ArbitrarySwapWitness w(n);
    std::vector<std::vector<int>> shifts;
    for (int k = 0; k < n; ++k) {
      std::vector<int> s;
      for (int m = 0; m < n; ++m) s.push_back((k + m) % n);
      shifts.push_back(s);
    }
    for (const auto& q : oracle::permutations(n)) {
      auto resp = w.respond(Permutation(q));
      auto pos = [](const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) - v.begin(); };
      // Legal: the pair really is inverted in the query.
      EXPECT_GT(pos(q, resp.first), pos(q, resp.second));
      int consistent = 0;
      for (const auto& s : shifts) consistent += pos(s, resp.first) < pos(s, resp.second);
      EXPECT_EQ(consistent, n - 1);
    }
    EXPECT_TRUE(w.certify_all());
  }
}
