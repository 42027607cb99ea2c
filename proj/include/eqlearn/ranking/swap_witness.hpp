#pragma once

#include <vector>

#include "eqlearn/ranking/permutation.hpp"

namespace eqlearn::ranking {

// Any-swap response: items `first` and `second` are in the wrong order, so
// `first` belongs before `second`. Nothing is implied about items between.
struct SwapResponse {
  int first = 0;
  int second = 0;
  friend bool operator==(const SwapResponse&, const SwapResponse&) = default;
};

struct SwapWitnessCheck {
  Permutation query;
  SwapResponse response;
  std::vector<int> consistent_shifts;  // indices k of the shifts that agree
  bool legal = false;                  // response really names an inverted pair of the query
  double phi_lower_bound = 0.0;        // consistent weight fraction
};

// Obstruction for the any-swap feedback model. Weight is spread uniformly over
// the n cyclic shifts <k, k+1, ..., n-1, 0, ..., k-1>, and every query admits
// a legal response keeping n - 1 of them consistent, so Phi >= (n-1)/n.
class ArbitrarySwapWitness {
 public:
  explicit ArbitrarySwapWitness(int n) : n_(n) {
    if (n < 2) throw ConfigError("arbitrary-swap witness requires n >= 2");
    for (int k = 0; k < n; ++k) {
      std::vector<int> v;
      for (int m = 0; m < n; ++m) v.push_back((k + m) % n);
      shifts_.emplace_back(std::move(v));
    }
  }

  int size() const { return n_; }
  const std::vector<Permutation>& shifts() const { return shifts_; }
  double shift_weight() const { return 1.0 / n_; }

  // Smallest i with i + 1 placed before i gives "i before i + 1"; the identity
  // gets "n - 1 before 0".
  SwapResponse respond(const Permutation& query) const {
    for (int i = 0; i + 1 < n_; ++i)
      if (query.precedes(i + 1, i)) return {i, i + 1};
    return {n_ - 1, 0};
  }

  SwapWitnessCheck check(const Permutation& query) const {
    SwapWitnessCheck c;
    c.query = query;
    c.response = respond(query);
    c.legal = query.precedes(c.response.second, c.response.first);
    for (int k = 0; k < n_; ++k)
      if (shifts_[k].precedes(c.response.first, c.response.second)) c.consistent_shifts.push_back(k);
    c.phi_lower_bound = static_cast<double>(c.consistent_shifts.size()) * shift_weight();
    return c;
  }

  // Exhaustive certificate over all n! queries.
  bool certify_all() const {
    for (const Permutation& q : all_permutations(n_)) {
      SwapWitnessCheck c = check(q);
      if (!c.legal || static_cast<int>(c.consistent_shifts.size()) != n_ - 1) return false;
    }
    return true;
  }

 private:
  int n_;
  std::vector<Permutation> shifts_;
};

}  // namespace eqlearn::ranking
