#pragma once

#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>

#include "eqlearn/core/types.hpp"

namespace eqlearn::harness {

// One experiment. Field names double as config-file keys and CLI flags.
struct ExperimentConfig {
  std::string domain = "ranking";      // ranking | clustering | classify
  std::string feedback = "bubble";     // bubble | insertion | unspecified | specified
  std::string mode = "hypercube";      // classify: hypercube | hyperplane
  int n = 4;
  int k = 2;
  int d = 2;
  double p = 1.0;
  double delta = 0.2;
  std::string noise = "uniform";       // uniform | adversarial | confirm-spam
  std::string oracle = "uniform-valid";  // uniform-valid | adversarial-valid | adversary
  std::string median = "gamma-exact";  // gamma-exact | phi-exact | sampled | bubble-fix | greedy-clustering | hyperplane-lp
  std::string targets = "random";      // random | all
  std::string family = "all";          // clustering: all | intervals | file:<path>
  std::string points = "random";       // classify: random | file:<path>
  bool exactly_k = false;
  double epsilon = 0.1;
  std::size_t samples = 0;             // sampled median: samples per iteration (0 = default budget)
  std::size_t chain_steps = 0;         // linear-extension burn-in (0 = default)
  std::size_t trials = 1;
  std::uint64_t seed = 0;
};

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

namespace detail {

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T out{};
  in >> out;
  if (!in || !(in >> std::ws).eof()) throw ConfigError("config field '" + key + "': '" + value + "' is not a valid number");
  return out;
}

inline bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "no") return false;
  throw ConfigError("config field '" + key + "': expected true or false");
}

}  // namespace detail

// Assigns one field by name. Unknown keys are configuration errors.
inline void set_field(ExperimentConfig& c, const std::string& key, const std::string& value) {
  using detail::parse_number;
  if (key == "domain") c.domain = value;
  else if (key == "feedback") c.feedback = value;
  else if (key == "mode") c.mode = value;
  else if (key == "n") c.n = parse_number<int>(key, value);
  else if (key == "k") c.k = parse_number<int>(key, value);
  else if (key == "d") c.d = parse_number<int>(key, value);
  else if (key == "p") c.p = parse_number<double>(key, value);
  else if (key == "delta") c.delta = parse_number<double>(key, value);
  else if (key == "noise" || key == "noise_model") c.noise = value;
  else if (key == "oracle") c.oracle = value;
  else if (key == "median") c.median = value;
  else if (key == "targets") c.targets = value;
  else if (key == "family") c.family = value;
  else if (key == "points") c.points = value;
  else if (key == "exactly_k") c.exactly_k = detail::parse_bool(key, value);
  else if (key == "epsilon") c.epsilon = parse_number<double>(key, value);
  else if (key == "samples") c.samples = parse_number<std::size_t>(key, value);
  else if (key == "chain_steps") c.chain_steps = parse_number<std::size_t>(key, value);
  else if (key == "trials") c.trials = parse_number<std::size_t>(key, value);
  else if (key == "seed" || key == "base_seed") c.seed = parse_number<std::uint64_t>(key, value);
  else throw ConfigError("unknown config field '" + key + "'");
}

// key=value lines; '#' starts a comment.
inline void read_config(std::istream& in, ExperimentConfig& c) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
    set_field(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

inline void read_config_file(const std::string& path, ExperimentConfig& c) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  read_config(in, c);
}

// Field-level validation independent of domain construction.
inline void validate(const ExperimentConfig& c) {
  auto fail = [](const std::string& field, const std::string& why) { throw ConfigError("config field '" + field + "': " + why); };
  if (c.domain != "ranking" && c.domain != "clustering" && c.domain != "classify")
    fail("domain", "expected ranking|clustering|classify");
  if (!(c.p > 0.5 && c.p <= 1.0)) fail("p", "must lie in (1/2, 1]");
  if (!(c.delta > 0.0 && c.delta < 1.0)) fail("delta", "must lie in (0, 1)");
  if (c.trials < 1) fail("trials", "must be at least 1");
  if (c.n < 1) fail("n", "must be positive");
  if (c.targets != "random" && c.targets != "all") fail("targets", "expected random|all");
  if (c.noise != "uniform" && c.noise != "adversarial" && c.noise != "confirm-spam")
    fail("noise", "expected uniform|adversarial|confirm-spam");
  if (c.oracle != "uniform-valid" && c.oracle != "adversarial-valid" && c.oracle != "adversary")
    fail("oracle", "expected uniform-valid|adversarial-valid|adversary");
  if (!(c.epsilon > 0.0 && c.epsilon < 0.5)) fail("epsilon", "must lie in (0, 1/2)");
  if (c.domain == "ranking") {
    if (c.feedback != "bubble" && c.feedback != "insertion") fail("feedback", "ranking expects bubble|insertion");
    if (c.median != "gamma-exact" && c.median != "phi-exact" && c.median != "sampled" && c.median != "bubble-fix")
      fail("median", "ranking expects gamma-exact|phi-exact|sampled|bubble-fix");
    if (c.oracle == "adversary" && c.feedback != "bubble") fail("oracle", "the adversary answers bubble feedback only");
    if (c.oracle == "adversary" && c.p != 1.0) fail("oracle", "the adversary is noiseless (p = 1)");
  } else if (c.domain == "clustering") {
    if (c.feedback != "unspecified" && c.feedback != "specified") fail("feedback", "clustering expects unspecified|specified");
    if (c.median != "gamma-exact" && c.median != "phi-exact" && c.median != "greedy-clustering")
      fail("median", "clustering expects gamma-exact|phi-exact|greedy-clustering");
    if (c.median == "greedy-clustering" && c.feedback != "unspecified")
      fail("median", "greedy-clustering applies to unspecified-split feedback");
    if (c.k < 1 || c.k > c.n) fail("k", "must lie in 1..n");
    if (c.oracle == "adversary") fail("oracle", "adversary mode exists for ranking only");
  } else {
    if (c.mode != "hypercube" && c.mode != "hyperplane") fail("mode", "classify expects hypercube|hyperplane");
    if (c.median != "gamma-exact" && c.median != "phi-exact" && c.median != "sampled" && c.median != "hyperplane-lp")
      fail("median", "classify expects gamma-exact|phi-exact|sampled|hyperplane-lp");
    if (c.median == "hyperplane-lp" && c.mode != "hyperplane") fail("median", "hyperplane-lp needs mode=hyperplane");
    if (c.mode == "hyperplane" && (c.d < 1 || c.d > 3)) fail("d", "must lie in 1..3");
    if (c.oracle == "adversary") fail("oracle", "adversary mode exists for ranking only");
  }
}

}  // namespace eqlearn::harness
