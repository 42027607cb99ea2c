#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "eqlearn/ranking/linear_extensions.hpp"

namespace eqlearn::ranking {

// Exact pairwise statistics of the uniform distribution over the linear
// extensions of a partial order, by dynamic programming over downsets.
// Memory and time grow as 2^n, so the routine is capped at 20 items.
struct PrecedenceMatrix {
  int n = 0;
  double extensions = 0.0;      // number of linear extensions
  std::vector<double> before;   // before[a * n + b] = Pr[a precedes b]

  double at(int a, int b) const { return before[static_cast<std::size_t>(a) * n + b]; }
};

inline constexpr int kExactDpMaxItems = 20;

inline PrecedenceMatrix precedence_matrix(const PartialOrderConstraints& order) {
  const int n = order.size();
  if (n > kExactDpMaxItems) throw ConfigError("exact extension DP is limited to 20 items");
  const std::size_t states = std::size_t{1} << n;
  const std::uint64_t full = states - 1;
  std::vector<std::uint64_t> pred(static_cast<std::size_t>(n)), succ(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    pred[x] = order.predecessors(x);
    succ[x] = order.successors(x);
  }

  // f[D]: orderings of downset D; g[D]: orderings of the complement of D.
  std::vector<double> f(states, 0.0), g(states, 0.0);
  f[0] = 1.0;
  for (std::uint64_t d = 1; d <= full; ++d) {
    double acc = 0.0;
    for (int x = 0; x < n; ++x)
      if (((d >> x) & 1U) && (succ[x] & d) == 0 && (pred[x] & ~d) == 0) acc += f[d & ~(std::uint64_t{1} << x)];
    f[d] = acc;
  }
  g[full] = 1.0;
  for (std::uint64_t d = full; d-- > 0;) {
    double acc = 0.0;
    for (int x = 0; x < n; ++x)
      if (!((d >> x) & 1U) && (pred[x] & ~d) == 0) acc += g[d | (std::uint64_t{1} << x)];
    g[d] = acc;
  }

  PrecedenceMatrix out;
  out.n = n;
  out.extensions = f[full];
  out.before.assign(static_cast<std::size_t>(n) * n, 0.0);
  if (!(out.extensions > 0.0)) throw InvariantError("precedence_matrix: order has no linear extension");
  // a precedes b iff b is still outside the downset at the step that adds a.
  for (std::uint64_t d = 0; d < full; ++d) {
    if (f[d] == 0.0) continue;
    for (int a = 0; a < n; ++a) {
      if (((d >> a) & 1U) || (pred[a] & ~d) != 0) continue;
      std::uint64_t next = d | (std::uint64_t{1} << a);
      double c = f[d] * g[next];
      if (c == 0.0) continue;
      for (int b = 0; b < n; ++b)
        if (!((next >> b) & 1U)) out.before[static_cast<std::size_t>(a) * n + b] += c;
    }
  }
  for (double& v : out.before) v /= out.extensions;
  return out;
}

// Permutation minimising sum over (a before b) of Pr[b precedes a], i.e. the
// Gamma-argmin in the Kendall metric. Ties go to the lexicographically
// smallest permutation, matching the smallest-id rule on explicit spaces.
inline Permutation kemeny_median(const PrecedenceMatrix& m) {
  const int n = m.n;
  if (n > kExactDpMaxItems) throw ConfigError("exact Kemeny DP is limited to 20 items");
  const std::size_t states = std::size_t{1} << n;
  const std::uint64_t full = states - 1;
  // Cost of placing x right after the items of S: every later item y would
  // have preferred to come before x.
  auto place_cost = [&](std::uint64_t s, int x) {
    double c = 0.0;
    for (int y = 0; y < n; ++y)
      if (y != x && !((s >> y) & 1U)) c += m.at(y, x);
    return c;
  };
  std::vector<double> rest(states, 0.0);  // optimal cost to finish from S
  for (std::uint64_t s = full; s-- > 0;) {
    double best = kInfinity;
    for (int x = 0; x < n; ++x)
      if (!((s >> x) & 1U)) best = std::min(best, place_cost(s, x) + rest[s | (std::uint64_t{1} << x)]);
    rest[s] = best;
  }
  std::vector<int> items;
  std::uint64_t s = 0;
  const double tol = 1e-9 * std::max(1.0, rest[0]);
  while (s != full) {
    for (int x = 0; x < n; ++x) {
      if ((s >> x) & 1U) continue;
      std::uint64_t next = s | (std::uint64_t{1} << x);
      if (place_cost(s, x) + rest[next] <= rest[s] + tol) {
        items.push_back(x);
        s = next;
        break;
      }
    }
  }
  return Permutation(std::move(items));
}

}  // namespace eqlearn::ranking
