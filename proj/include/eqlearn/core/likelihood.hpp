#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "eqlearn/core/types.hpp"

namespace eqlearn {

// Per-model likelihoods p^a (1-p)^(K-a), stored as integer consistent-counts
// a and a shared round count K. Models outside the initial set carry weight 0.
// All weight arithmetic happens in log space.
class LikelihoodState {
 public:
  LikelihoodState(std::size_t model_count, std::span<const ModelId> initial, double p)
      : consistent_(model_count, 0), active_(model_count, false), p_(p) {
    if (!(p > 0.5 && p <= 1.0)) throw ConfigError("LikelihoodState: p must lie in (1/2, 1]");
    for (ModelId s : initial) {
      if (s >= model_count) throw ConfigError("LikelihoodState: initial model out of range");
      active_[s] = true;
    }
  }

  double p() const { return p_; }
  std::size_t rounds() const { return rounds_; }
  std::size_t model_count() const { return consistent_.size(); }
  bool active(ModelId s) const { return active_.at(s); }
  std::uint32_t consistent_count(ModelId s) const { return consistent_.at(s); }

  // Applies one round: consistent models gain a count, every model ages by one.
  template <class IsConsistent>
  void update(IsConsistent&& is_consistent) {
    for (ModelId s = 0; s < consistent_.size(); ++s)
      if (active_[s] && is_consistent(s)) ++consistent_[s];
    ++rounds_;
  }

  // Unnormalized log-likelihood; -inf for inactive or (p = 1) eliminated models.
  double log_weight(ModelId s) const {
    if (!active_.at(s)) return -kInfinity;
    std::size_t a = consistent_[s];
    std::size_t b = rounds_ - a;
    if (p_ == 1.0) return b == 0 ? 0.0 : -kInfinity;
    return static_cast<double>(a) * std::log(p_) + static_cast<double>(b) * std::log1p(-p_);
  }

  // log of the unnormalized total weight.
  double log_total() const {
    double mx = -kInfinity;
    for (ModelId s = 0; s < consistent_.size(); ++s) mx = std::max(mx, log_weight(s));
    if (std::isinf(mx)) return -kInfinity;
    double acc = 0.0;
    for (ModelId s = 0; s < consistent_.size(); ++s) {
      double lw = log_weight(s);
      if (!std::isinf(lw)) acc += std::exp(lw - mx);
    }
    return mx + std::log(acc);
  }

  // Weights normalized to sum to 1 (all zero if every model is eliminated).
  std::vector<double> weights() const {
    std::vector<double> w(consistent_.size(), 0.0);
    double lt = log_total();
    if (std::isinf(lt)) return w;
    for (ModelId s = 0; s < consistent_.size(); ++s) {
      double lw = log_weight(s);
      if (!std::isinf(lw)) w[s] = std::exp(lw - lt);
    }
    return w;
  }

 private:
  std::vector<std::uint32_t> consistent_;
  std::vector<bool> active_;
  std::size_t rounds_ = 0;
  double p_;
};

}  // namespace eqlearn
