#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "eqlearn/classify/hyperplane.hpp"
#include "eqlearn/clustering/clustering_space.hpp"
#include "eqlearn/core/learners.hpp"
#include "eqlearn/core/sampled_median.hpp"
#include "eqlearn/harness/config.hpp"
#include "eqlearn/harness/csv.hpp"
#include "eqlearn/ranking/adversary.hpp"
#include "eqlearn/ranking/ranker.hpp"

namespace eqlearn::harness {

struct Summary {
  std::size_t trials = 0;
  double mean_queries = 0.0;
  double p95_queries = 0.0;
  double success_rate = 0.0;
  std::size_t violations = 0;
  std::string bound_name;
  bool noisy = false;
  bool lower_bound = false;  // the bound is a floor the learner must not beat
  std::size_t lambda1_fallbacks = 0;
  double n0 = 0.0;
};

struct ExperimentResult {
  std::vector<RunRecord> records;
  Summary summary;
};

struct BoundInfo {
  double value = 0.0;
  std::string name;
  bool lower = false;     // true: queries must be >= value
  bool enforced = false;  // violations count against the run
};

// Noiseless: ceil(log_{1/beta} N0). Noisy: the leading term
// (1 - delta) log2 N0 / (log2(1/tau) - H(p)), lower-order terms omitted.
inline double theoretical_bound(double p, double delta, double beta, double n0) {
  if (!(n0 >= 1.0)) throw ConfigError("theoretical_bound: N0 must be at least 1");
  if (p >= 1.0) {
    if (n0 <= 1.0) return 0.0;
    return static_cast<double>(ceil_count(std::log(n0) / std::log(1.0 / beta)));
  }
  double tau = beta * p + (1.0 - beta) * (1.0 - p);
  double gap = std::log2(1.0 / tau) - binary_entropy(p);
  if (!(gap > 0.0)) throw ConfigError("theoretical_bound: schedule invalid (log(1/tau) <= H(p))");
  return (1.0 - delta) * std::log2(n0) / gap;
}

inline double theoretical_bound(const ExperimentConfig& c, double n0, double beta = 0.5) {
  return theoretical_bound(c.p, c.delta, beta, n0);
}

namespace detail {

inline double factorial_real(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

inline OracleConfig oracle_config(const ExperimentConfig& c, std::uint64_t seed) {
  OracleConfig o;
  o.p = c.p;
  o.noise = parse_noise_model(c.noise);
  o.valid_choice = c.oracle == "adversarial-valid" ? ValidChoice::adversarial_valid : ValidChoice::uniform_valid;
  o.seed = seed;
  return o;
}

struct TrialOutcome {
  std::size_t queries = 0;
  bool success = false;
  bool fallback = false;
};

// Explicit-domain trial: noiseless halving or the two-stage noisy learner.
inline TrialOutcome run_explicit(const DomainAdapter& domain, std::span<const ModelId> initial, ModelId target,
                                 const ExperimentConfig& c, double beta, const MedianSelector& select,
                                 std::uint64_t seed) {
  SimulatedOracle oracle(domain, target, oracle_config(c, seed));
  TrialOutcome out;
  NoisyResult r = learn_noisy(domain, initial, c.p, c.delta, beta, oracle, select);
  out.queries = r.queries;
  out.success = r.model && *r.model == target;
  out.fallback = r.schedule && r.schedule->lambda1_fallback;
  return out;
}

inline ModelId pick_target(const ExperimentConfig& c, std::span<const ModelId> initial, std::size_t trial, Rng& rng) {
  if (c.targets == "all") return initial[trial % initial.size()];
  return initial[uniform_index(rng, initial.size())];
}

inline SampledMedianOptions sampled_options(const ExperimentConfig& c) {
  SampledMedianOptions o;
  o.epsilon = c.epsilon;
  o.budget.samples_per_iteration = c.samples;
  return o;
}

}  // namespace detail

// Runs c.trials trials with seed = c.seed + trial index.
inline ExperimentResult run_experiment(const ExperimentConfig& c) {
  validate(c);
  ExperimentResult res;
  BoundInfo bound;
  double n0 = 0.0;
  std::string domain_name;
  std::vector<detail::TrialOutcome> outcomes;
  const bool noisy = c.p < 1.0;

  auto for_trials = [&](auto&& one) {
    for (std::size_t t = 0; t < c.trials; ++t) {
      Rng rng = make_trial_rng(c.seed, t);
      outcomes.push_back(one(t, c.seed + t, rng));
    }
  };
  auto set_bound = [&](double beta, const std::string& name) {
    bound.value = theoretical_bound(c, n0, beta);
    bound.name = noisy ? "noisy leading term, beta=" + format_number(beta) : name;
    bound.enforced = !noisy;
  };

  if (c.domain == "ranking") {
    using namespace ranking;
    FeedbackKind kind = parse_feedback_kind(c.feedback);
    const bool explicit_space =
        c.oracle != "adversary" && (c.median == "gamma-exact" || c.median == "phi-exact") && c.n <= 8;
    n0 = detail::factorial_real(c.n);
    if (explicit_space) {
      PermutationSpace space(c.n, kind);
      domain_name = space.name();
      std::vector<ModelId> initial(space.model_count());
      for (ModelId s = 0; s < initial.size(); ++s) initial[s] = s;
      MedianSelector select = c.median == "phi-exact" ? phi_selector(space) : gamma_selector(space);
      set_bound(0.5, "ceil(log2 N0)");
      for_trials([&](std::size_t t, std::uint64_t seed, Rng& rng) {
        ModelId target = detail::pick_target(c, initial, t, rng);
        return detail::run_explicit(space, initial, target, c, 0.5, select, seed);
      });
    } else {
      if (noisy) throw ConfigError("config field 'p': constraint-based rankers (n > 8, sampled, bubble-fix, adversary) are noiseless only");
      if (c.median == "phi-exact") throw ConfigError("config field 'median': phi-exact needs n <= 8");
      domain_name = kind == FeedbackKind::bubble ? "ranking-bubble" : "ranking-insertion";
      RankerOptions opt;
      opt.kind = kind;
      opt.strategy = c.median == "sampled" ? RankStrategy::sampled
                     : c.median == "bubble-fix" ? RankStrategy::bubble_fix
                                                : RankStrategy::exact_dp;
      if (opt.strategy == RankStrategy::exact_dp && c.n > kExactDpMaxItems)
        throw ConfigError("config field 'n': exact ranking medians are limited to 20 items");
      opt.sampled.median = detail::sampled_options(c);
      opt.sampled.median.fresh_pool = false;
      opt.sampled.burn_in = c.chain_steps;
      if (c.oracle == "adversary") {
        bound = {static_cast<double>(lower_bound_queries(c.n)), "adversary floor Q(n)", true, true};
        domain_name += "-adversary";
      } else if (opt.strategy == RankStrategy::sampled) {
        set_bound(0.5 + c.epsilon, "ceil(log_{1/(1/2+eps)} N0)");
      } else if (opt.strategy == RankStrategy::bubble_fix) {
        bound = {c.n * (c.n - 1) / 2.0 + 1.0, "Kendall diameter + 1", false, true};
      } else {
        set_bound(0.5, "ceil(log2 N0)");
      }
      for_trials([&](std::size_t t, std::uint64_t seed, Rng& rng) {
        detail::TrialOutcome out;
        if (c.oracle == "adversary") {
          LowerBoundAdversary adv(c.n);
          RankResult r = learn_ranking(c.n, adv, opt, rng);
          out.queries = r.queries;
          out.success = adv.committed() && r.model == adv.committed_permutation() && adv.consistent_with(r.model);
          return out;
        }
        Permutation target = c.targets == "all" && c.n <= 12
                                 ? lex_unrank(c.n, t % static_cast<std::size_t>(n0))
                                 : random_permutation(c.n, rng);
        TargetRankingResponder responder(target, kind, 1.0, seed);
        RankResult r = learn_ranking(c.n, responder, opt, rng);
        out.queries = r.queries;
        out.success = r.model == target;
        return out;
      });
    }
  } else if (c.domain == "clustering") {
    using namespace clustering;
    ClusteringSpace space(c.n, parse_split_mode(c.feedback));
    domain_name = space.name();
    ClusterFamily family;
    if (c.family == "all") family = family_all(c.n, c.k);
    else if (c.family == "intervals") family = family_intervals(c.n, c.k);
    else if (c.family.rfind("file:", 0) == 0) family = family_from_file(c.family.substr(5), c.n, c.k);
    else throw ConfigError("config field 'family': expected all|intervals|file:<path>");
    family.exactly_k = c.exactly_k;
    std::vector<ModelId> initial = restricted_space(space, family);
    n0 = static_cast<double>(initial.size());
    MedianSelector select = c.median == "greedy-clustering" ? greedy_selector(space)
                            : c.median == "phi-exact"       ? phi_selector(space)
                                                            : gamma_selector(space);
    double beta = 0.5;
    std::string name = "ceil(log2 N0)";
    if (space.directed() && c.median != "greedy-clustering") {
      beta = 1.0 - 1.0 / space.cycle_ratio();
      name = "ceil(log_{1/beta} N0), beta=(c-1)/c";
    }
    set_bound(beta, name);
    for_trials([&](std::size_t t, std::uint64_t seed, Rng& rng) {
      ModelId target = detail::pick_target(c, initial, t, rng);
      return detail::run_explicit(space, initial, target, c, beta, select, seed);
    });
  } else {
    using namespace classify;
    if (c.n > 16) throw ConfigError("config field 'n': classification supports at most 16 points");
    HypercubeSpace cube(c.n);
    domain_name = "classify-" + c.mode;
    std::vector<ModelId> initial;
    PointSet pts;
    if (c.mode == "hyperplane") {
      if (c.points.rfind("file:", 0) == 0) {
        pts = read_points_file(c.points.substr(5), static_cast<std::size_t>(c.d));
        if (static_cast<int>(pts.size()) != c.n) throw ConfigError("config field 'n': points file holds a different number of points");
      } else if (c.points == "random") {
        Rng prng(c.seed);
        std::vector<Point> raw;
        for (int i = 0; i < c.n; ++i) {
          Point p(static_cast<std::size_t>(c.d));
          for (double& x : p) x = uniform_real(prng);
          raw.push_back(std::move(p));
        }
        pts = PointSet::make(static_cast<std::size_t>(c.d), std::move(raw));
      } else {
        throw ConfigError("config field 'points': expected random|file:<path>");
      }
      initial = family_ids(enumerate_hyperplane_family(pts));
    } else {
      initial.resize(cube.model_count());
      for (ModelId s = 0; s < initial.size(); ++s) initial[s] = s;
    }
    n0 = static_cast<double>(initial.size());
    double beta = 0.5;
    std::string name = "ceil(log2 M)";
    if (c.median == "hyperplane-lp") {
      beta = static_cast<double>(c.d + 1) / (c.d + 2);
      name = "ceil(log_{(d+2)/(d+1)} M)";
    } else if (c.median == "sampled") {
      beta = 0.5 + c.epsilon;
      name = "ceil(log_{1/(1/2+eps)} M)";
    }
    set_bound(beta, name);
    for_trials([&](std::size_t t, std::uint64_t seed, Rng& rng) {
      ModelId target = detail::pick_target(c, initial, t, rng);
      MedianSelector select;
      if (c.median == "hyperplane-lp") {
        select = hyperplane_selector(pts);
      } else if (c.median == "sampled") {
        select = [&cube, &c, &rng](std::span<const double> w) {
          std::vector<double> copy(w.begin(), w.end());
          ModelId start = static_cast<ModelId>(std::max_element(copy.begin(), copy.end()) - copy.begin());
          return sampled_median(cube, exact_weight_sampler(copy), start, detail::sampled_options(c), rng).model;
        };
      } else if (c.median == "phi-exact") {
        select = phi_selector(cube);
      } else {
        select = gamma_selector(cube);
      }
      return detail::run_explicit(cube, initial, target, c, beta, select, seed);
    });
  }

  // Records and summary.
  std::vector<double> qs;
  std::size_t successes = 0;
  for (std::size_t t = 0; t < outcomes.size(); ++t) {
    const auto& o = outcomes[t];
    RunRecord r;
    r.trial = t;
    r.domain = domain_name;
    r.n = c.n;
    r.N = n0;
    r.p = c.p;
    r.delta = c.delta;
    r.noise_model = c.noise;
    r.queries = o.queries;
    r.success = o.success;
    r.theoretical_bound = bound.value;
    r.seed = c.seed + t;
    res.records.push_back(r);
    qs.push_back(static_cast<double>(o.queries));
    if (o.success) ++successes;
    if (o.fallback) ++res.summary.lambda1_fallbacks;
    if (bound.enforced) {
      double q = static_cast<double>(o.queries);
      if (bound.lower ? q < bound.value : q > bound.value + 1e-9) ++res.summary.violations;
    }
  }
  Summary& s = res.summary;
  s.trials = outcomes.size();
  s.n0 = n0;
  s.noisy = noisy;
  s.lower_bound = bound.lower;
  s.bound_name = bound.name;
  s.success_rate = s.trials ? static_cast<double>(successes) / s.trials : 0.0;
  if (!qs.empty()) {
    double sum = 0.0;
    for (double q : qs) sum += q;
    s.mean_queries = sum / qs.size();
    std::sort(qs.begin(), qs.end());
    std::size_t rank = static_cast<std::size_t>(std::ceil(0.95 * qs.size()));
    s.p95_queries = qs[std::max<std::size_t>(rank, 1) - 1];
  }
  return res;
}

inline std::string summary_text(const Summary& s) {
  std::ostringstream o;
  o << "trials=" << s.trials << " N0=" << format_number(s.n0) << " mean_queries=" << format_number(s.mean_queries)
    << " p95_queries=" << format_number(s.p95_queries) << " success_rate=" << format_number(s.success_rate)
    << " bound=\"" << s.bound_name << "\" violations=" << s.violations;
  if (s.noisy) o << " note=\"noisy bound is the leading term only; success rate is the check\"";
  if (s.lambda1_fallbacks) o << " lambda1_fallbacks=" << s.lambda1_fallbacks;
  return o.str();
}

}  // namespace eqlearn::harness
