// Command-line front end: learn, median, verify, sample-linext, bounds.

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eqlearn/harness/experiment.hpp"
#include "eqlearn/harness/verify.hpp"

namespace {

using namespace eqlearn;
using harness::ExperimentConfig;

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitConfig = 2;

// Experiment flags are stored as strings and applied over the config file,
// so a flag given on the command line always wins.
struct FlagSet {
  std::map<std::string, std::string> values;
  std::vector<std::pair<std::string, CLI::Option*>> options;

  void add(CLI::App* app, const std::string& flag, const std::string& key, const std::string& help) {
    options.emplace_back(key, app->add_option("--" + flag, values[key], help));
  }
  void add_experiment_flags(CLI::App* app) {
    add(app, "domain", "domain", "ranking | clustering | classify");
    add(app, "feedback", "feedback", "bubble | insertion | unspecified | specified");
    add(app, "mode", "mode", "classify: hypercube | hyperplane");
    add(app, "n", "n", "items / points");
    add(app, "k", "k", "clustering: target cluster count");
    add(app, "d", "d", "classify: dimension");
    add(app, "p", "p", "probability of a correct response, in (1/2, 1]");
    add(app, "delta", "delta", "noisy failure probability");
    add(app, "noise", "noise", "uniform | adversarial | confirm-spam");
    add(app, "oracle", "oracle", "uniform-valid | adversarial-valid | adversary");
    add(app, "median", "median", "gamma-exact | phi-exact | sampled | bubble-fix | greedy-clustering | hyperplane-lp");
    add(app, "targets", "targets", "random | all");
    add(app, "family", "family", "clustering: all | intervals | file:<path>");
    add(app, "points", "points", "classify: random | file:<path>");
    add(app, "exactly-k", "exactly_k", "clustering: admit exactly k clusters");
    add(app, "epsilon", "epsilon", "sampled median accuracy");
    add(app, "samples", "samples", "sampled median: samples per iteration");
    add(app, "chain-steps", "chain_steps", "ranking sampler burn-in steps");
  }
  void apply(ExperimentConfig& c) const {
    for (const auto& [key, opt] : options)
      if (opt->count() > 0) harness::set_field(c, key, values.at(key));
  }
};

struct Globals {
  std::string config;
  std::string out;
  std::string seed;
  std::string trials;
};

ExperimentConfig load_config(const Globals& g, const FlagSet& flags, CLI::Option* seed_opt, CLI::Option* trials_opt) {
  ExperimentConfig c;
  if (!g.config.empty()) harness::read_config_file(g.config, c);
  flags.apply(c);
  if (seed_opt->count()) harness::set_field(c, "seed", g.seed);
  if (trials_opt->count()) harness::set_field(c, "trials", g.trials);
  return c;
}

int cmd_learn(const ExperimentConfig& c, const std::string& out) {
  auto res = harness::run_experiment(c);
  if (out.empty() || out == "-") {
    harness::write_csv(std::cout, res.records);
  } else {
    harness::emit_csv(res.records, out);
  }
  std::cerr << harness::summary_text(res.summary) << '\n';
  return res.summary.violations == 0 ? kExitOk : kExitInvariant;
}

std::vector<double> read_weights(const std::string& path, std::size_t n) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open weights file '" + path + "'");
  std::vector<double> w(n, 0.0);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::size_t idx = 0;
    double weight = 0.0;
    if (!(ls >> idx)) {
      if (harness::trim(line).empty()) continue;
      throw ConfigError("weights line " + std::to_string(lineno) + ": expected 'index weight'");
    }
    if (!(ls >> weight) || !(ls >> std::ws).eof())
      throw ConfigError("weights line " + std::to_string(lineno) + ": expected 'index weight'");
    if (idx >= n) throw ConfigError("weights line " + std::to_string(lineno) + ": model index out of range");
    if (!(weight >= 0.0)) throw ConfigError("weights line " + std::to_string(lineno) + ": weights must be non-negative");
    w[idx] += weight;
  }
  return w;
}

int cmd_median(const ExperimentConfig& c, const std::string& weights_path) {
  harness::validate(c);
  if (weights_path.empty()) throw ConfigError("median: --weights is required");
  std::unique_ptr<DomainAdapter> domain;
  std::function<std::string(ModelId)> describe;
  std::optional<classify::PointSet> pts;
  if (c.domain == "ranking") {
    if (c.n > 8) throw ConfigError("median: explicit ranking spaces need n <= 8");
    auto space = std::make_unique<ranking::PermutationSpace>(c.n, ranking::parse_feedback_kind(c.feedback));
    auto* raw = space.get();
    describe = [raw](ModelId s) { return raw->model(s).str(); };
    domain = std::move(space);
  } else if (c.domain == "clustering") {
    auto space = std::make_unique<clustering::ClusteringSpace>(c.n, clustering::parse_split_mode(c.feedback));
    auto* raw = space.get();
    describe = [raw](ModelId s) { return raw->model(s).str(); };
    domain = std::move(space);
  } else {
    domain = std::make_unique<classify::HypercubeSpace>(c.n);
    int n = c.n;
    describe = [n](ModelId s) { return classify::labels_str(s, n); };
    if (c.median == "hyperplane-lp") {
      if (c.points.rfind("file:", 0) != 0) throw ConfigError("median: hyperplane-lp needs --points file:<path>");
      pts = classify::read_points_file(c.points.substr(5), static_cast<std::size_t>(c.d));
      if (static_cast<int>(pts->size()) != c.n) throw ConfigError("median: points file holds a different number of points");
    }
  }
  auto w = read_weights(weights_path, domain->model_count());
  ModelId m = kNoModel;
  if (c.median == "gamma-exact") {
    m = gamma_argmin(*domain, w);
  } else if (c.median == "phi-exact") {
    m = phi_argmin(*domain, w).model;
  } else if (c.median == "greedy-clustering") {
    m = clustering::greedy_uc_median(static_cast<const clustering::ClusteringSpace&>(*domain), w);
  } else if (c.median == "hyperplane-lp") {
    m = classify::hyperplane_median(*pts, w).labels;
  } else if (c.median == "sampled") {
    Rng rng(c.seed);
    SampledMedianOptions opt;
    opt.epsilon = c.epsilon;
    opt.budget.samples_per_iteration = c.samples;
    m = sampled_median(*domain, exact_weight_sampler(w), ModelId{0}, opt, rng).model;
  } else {
    throw ConfigError("median: strategy '" + c.median + "' is not available here");
  }
  std::cout << "model " << m << '\n'
            << "label " << describe(m) << '\n'
            << "phi " << harness::format_number(potential(*domain, w, m)) << '\n'
            << "gamma " << harness::format_number(gamma_potential(*domain, w, m)) << '\n';
  return kExitOk;
}

int cmd_verify(const std::string& scope, std::uint64_t seed) {
  auto report = harness::verify_suite(scope, seed);
  for (const auto& c : report.checks)
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.scope << ": " << c.name << (c.detail.empty() ? "" : " (" + c.detail + ")")
              << '\n';
  return report.ok() ? kExitOk : kExitInvariant;
}

// "a<b,c<d" precedence list.
ranking::PartialOrderConstraints parse_constraints(int n, const std::string& spec) {
  ranking::PartialOrderConstraints order(n);
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = harness::trim(item);
    if (item.empty()) continue;
    auto lt = item.find('<');
    if (lt == std::string::npos) throw ConfigError("constraints: expected a<b, got '" + item + "'");
    int a = 0, b = 0;
    try {
      a = std::stoi(item.substr(0, lt));
      b = std::stoi(item.substr(lt + 1));
    } catch (const std::exception&) {
      throw ConfigError("constraints: bad item in '" + item + "'");
    }
    if (a < 0 || b < 0 || a >= n || b >= n) throw ConfigError("constraints: item out of range in '" + item + "'");
    if (!order.try_add(a, b)) throw ConfigError("constraints: cycle at '" + item + "'");
  }
  return order;
}

int cmd_sample(int n, std::size_t steps, std::size_t draws, std::uint64_t seed, const std::string& constraints) {
  if (n < 1 || n > ranking::PartialOrderConstraints::kMaxItems) throw ConfigError("sample-linext: --n must lie in 1..64");
  auto order = parse_constraints(n, constraints);
  Rng rng(seed);
  for (std::size_t i = 0; i < draws; ++i) std::cout << ranking::sample_linear_extension(order, steps, rng).str() << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interactive learning with equivalence queries over feedback graphs"};
  app.require_subcommand(1);
  Globals g;
  auto* seed_opt = app.add_option("--seed", g.seed, "base seed (trial i uses seed + i)");
  auto* trials_opt = app.add_option("--trials", g.trials, "number of trials");
  app.add_option("--out", g.out, "CSV output path (default: stdout)");
  app.add_option("--config", g.config, "key=value config file");

  FlagSet learn_flags, median_flags;
  auto* learn = app.add_subcommand("learn", "run an experiment and write one CSV row per trial");
  learn_flags.add_experiment_flags(learn);

  auto* median = app.add_subcommand("median", "select a median for a weight vector");
  median_flags.add_experiment_flags(median);
  std::string weights_path;
  median->add_option("--weights", weights_path, "file of 'model_index weight' lines");

  auto* verify = app.add_subcommand("verify", "run the seeded invariant checks");
  std::string scope = "all";
  verify->add_option("--scope", scope, "core | ranking | clustering | classify | all");

  auto* sample = app.add_subcommand("sample-linext", "draw linear extensions with the adjacent-transposition chain");
  int sample_n = 3;
  std::size_t steps = 0, draws = 1;
  std::string constraints;
  sample->add_option("--n", sample_n, "items");
  sample->add_option("--steps", steps, "chain steps per draw (default ceil(4 n^3 ln n) + 64)");
  sample->add_option("--draws", draws, "number of draws");
  sample->add_option("--constraints", constraints, "precedences such as 0<1,2<3");

  auto* bounds = app.add_subcommand("bounds", "print query bounds");
  FlagSet bound_flags;
  bound_flags.add_experiment_flags(bounds);
  double n0 = 0.0, beta = 0.5;
  auto* n0_opt = bounds->add_option("--n0", n0, "initial candidate count (default: n! for ranking, 2^n for classify)");
  bounds->add_option("--beta", beta, "per-round Phi bound");

  // Options may appear after the subcommand as well.
  for (auto* sub : {learn, median, verify, sample, bounds}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    std::uint64_t seed = 0;
    if (seed_opt->count()) seed = harness::detail::parse_number<std::uint64_t>("seed", g.seed);
    if (*learn) return cmd_learn(load_config(g, learn_flags, seed_opt, trials_opt), g.out);
    if (*median) return cmd_median(load_config(g, median_flags, seed_opt, trials_opt), weights_path);
    if (*verify) return cmd_verify(scope, seed_opt->count() ? seed : 1);
    if (*sample) return cmd_sample(sample_n, steps ? steps : ranking::default_chain_steps(sample_n), draws, seed, constraints);
    if (*bounds) {
      ExperimentConfig c = load_config(g, bound_flags, seed_opt, trials_opt);
      if (!n0_opt->count()) {
        if (c.domain == "ranking") n0 = harness::detail::factorial_real(c.n);
        else if (c.domain == "classify") n0 = std::ldexp(1.0, c.n);
        else throw ConfigError("bounds: pass --n0 for clustering");
      }
      std::cout << "N0 " << harness::format_number(n0) << '\n'
                << "noiseless_bound " << harness::format_number(harness::theoretical_bound(1.0, c.delta, beta, n0)) << '\n';
      if (c.p < 1.0)
        std::cout << "noisy_leading_term " << harness::format_number(harness::theoretical_bound(c.p, c.delta, beta, n0)) << '\n';
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvariantError& e) {
    std::cerr << "invariant failure: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvariant;
  }
  return kExitOk;
}
