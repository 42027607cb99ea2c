#pragma once

#include <cmath>
#include <cstddef>

#include "eqlearn/core/types.hpp"

namespace eqlearn {

// Binary entropy in bits.
inline double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

// Round counts and constants of the two-stage noisy learner. Logarithms are
// base 2 except where the natural log is explicit (the ln(1/delta') terms).
struct NoisySchedule {
  double p = 0.0;
  double delta = 0.0;
  double delta_prime = 0.0;
  double beta = 0.5;
  double tau = 0.0;
  double entropy = 0.0;
  double log_odds = 0.0;  // log2(p / (1 - p))
  double gap = 0.0;       // log2(1/tau) - H(p)
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  bool lambda1_fallback = false;
  std::size_t n0 = 0;
  std::size_t k1 = 0;
};

// ceil(x) that ignores floating noise just above an integer.
inline std::size_t ceil_count(double x) {
  if (!(x > 0.0)) return 0;
  return static_cast<std::size_t>(std::ceil(x - 1e-9));
}

namespace detail {

inline double stage_rounds(const NoisySchedule& s, double lambda, std::size_t set_size) {
  double denom = s.gap - lambda * s.log_odds;
  double first = std::log2(static_cast<double>(set_size)) / denom +
                 std::log2(1.0 / s.tau) / std::log2(1.0 / s.delta_prime);
  double second = std::log(1.0 / s.delta_prime) / (lambda * lambda);
  return std::max(first, second) + 1.0;
}

}  // namespace detail

inline NoisySchedule make_schedule(double p, double delta, double beta, std::size_t n0) {
  if (!(p > 0.5 && p < 1.0)) throw ConfigError("noisy schedule: p must lie in (1/2, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("noisy schedule: delta must lie in (0, 1)");
  if (!(beta >= 0.5 && beta < 1.0)) throw ConfigError("noisy schedule: beta must lie in [1/2, 1)");
  if (n0 == 0) throw ConfigError("noisy schedule: empty initial set");

  NoisySchedule s;
  s.p = p;
  s.delta = delta;
  s.delta_prime = delta / 5.0;
  s.beta = beta;
  s.tau = beta * p + (1.0 - beta) * (1.0 - p);
  s.entropy = binary_entropy(p);
  s.log_odds = std::log2(p / (1.0 - p));
  s.gap = std::log2(1.0 / s.tau) - s.entropy;
  s.n0 = n0;
  if (!(s.gap > 0.0))
    throw ConfigError("noisy schedule: log(1/tau) must exceed H(p) (tau = " + std::to_string(s.tau) +
                      ", H(p) = " + std::to_string(s.entropy) + ")");

  s.lambda2 = s.gap / (2.0 * s.log_odds);
  double loglog = std::log2(std::log2(static_cast<double>(n0)));
  double root = loglog > 0.0 ? std::sqrt(1.0 / loglog) : kInfinity;
  s.lambda1 = std::max(root, s.lambda2);
  // At desk scale the 1/sqrt(log log N0) branch can make the stage-1
  // denominator non-positive; fall back to lambda2 in that case.
  if (!std::isfinite(s.lambda1) || !(s.gap - s.lambda1 * s.log_odds > 0.0)) {
    s.lambda1 = s.lambda2;
    s.lambda1_fallback = true;
  }
  s.k1 = ceil_count(detail::stage_rounds(s, s.lambda1, n0));
  return s;
}

inline std::size_t stage2_rounds(const NoisySchedule& s, std::size_t stage1_size) {
  if (stage1_size == 0) return 0;
  return ceil_count(detail::stage_rounds(s, s.lambda2, stage1_size));
}

// Repetitions of the final verification query for each surviving candidate.
inline std::size_t verification_repeats(const NoisySchedule& s, std::size_t stage2_size) {
  double q = 2.0 * std::log(static_cast<double>(stage2_size) / s.delta_prime) /
             ((2.0 * s.p - 1.0) * (2.0 * s.p - 1.0));
  return std::max<std::size_t>(1, ceil_count(q));
}

}  // namespace eqlearn
