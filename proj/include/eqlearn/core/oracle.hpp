#pragma once

#include <span>
#include <string>
#include <vector>

#include "eqlearn/core/domain.hpp"
#include "eqlearn/core/potential.hpp"

namespace eqlearn {

enum class NoiseModel { uniform, adversarial, confirm_spam };
enum class ValidChoice { uniform_valid, adversarial_valid };

inline NoiseModel parse_noise_model(const std::string& s) {
  if (s == "uniform") return NoiseModel::uniform;
  if (s == "adversarial") return NoiseModel::adversarial;
  if (s == "confirm-spam") return NoiseModel::confirm_spam;
  throw ConfigError("unknown noise model '" + s + "' (expected uniform|adversarial|confirm-spam)");
}

inline std::string to_string(NoiseModel m) {
  switch (m) {
    case NoiseModel::uniform: return "uniform";
    case NoiseModel::adversarial: return "adversarial";
    case NoiseModel::confirm_spam: return "confirm-spam";
  }
  return "uniform";
}

struct OracleConfig {
  double p = 1.0;
  NoiseModel noise = NoiseModel::uniform;
  ValidChoice valid_choice = ValidChoice::uniform_valid;
  std::uint64_t seed = 0;
};

// The user side of an equivalence query. `weights` is the learner's current
// weight vector (may be empty); adversarial choices score responses by it.
class Oracle {
 public:
  virtual ~Oracle() = default;
  virtual Response respond(ModelId query, std::span<const double> weights) = 0;
};

// Simulated user with a fixed target. Correct responses are feedback edges on
// a shortest path to the target (or a confirmation at the target); with
// probability 1 - p the response is drawn from the incorrect ones instead.
class SimulatedOracle final : public Oracle {
 public:
  SimulatedOracle(const DomainAdapter& domain, ModelId target, OracleConfig config)
      : domain_(&domain), target_(target), config_(config), rng_(config.seed) {
    if (target >= domain.model_count()) throw ConfigError("oracle target out of range");
    if (!(config.p > 0.5 && config.p <= 1.0)) throw ConfigError("oracle p must lie in (1/2, 1]");
  }

  ModelId target() const { return target_; }
  std::size_t responses() const { return responses_; }
  std::size_t correct_responses() const { return correct_; }

  std::vector<Response> valid_responses(ModelId query) const {
    if (query == target_) return {Response::confirm()};
    std::vector<Response> out;
    double d = domain_->distance(query, target_);
    for (const FeedbackEdge& e : domain_->feedback_edges(query))
      if (is_valid_edge(d, e)) out.push_back(Response::move(e.target, e.length));
    return out;
  }

  std::vector<Response> invalid_responses(ModelId query) const {
    std::vector<Response> out;
    if (query != target_) out.push_back(Response::confirm());
    double d = domain_->distance(query, target_);
    for (const FeedbackEdge& e : domain_->feedback_edges(query))
      if (query == target_ || !is_valid_edge(d, e)) out.push_back(Response::move(e.target, e.length));
    return out;
  }

  bool is_correct(ModelId query, const Response& r) const {
    for (const Response& v : valid_responses(query))
      if (v == r) return true;
    return false;
  }

  Response respond(ModelId query, std::span<const double> weights) override {
    ++responses_;
    bool truthful = config_.p >= 1.0 || uniform_real(rng_) < config_.p;
    if (!truthful) {
      auto wrong = invalid_responses(query);
      if (!wrong.empty()) {
        switch (config_.noise) {
          case NoiseModel::uniform:
            return wrong[uniform_index(rng_, wrong.size())];
          case NoiseModel::adversarial:
            if (!weights.empty()) return heaviest(query, wrong, weights);
            return wrong[uniform_index(rng_, wrong.size())];
          case NoiseModel::confirm_spam:
            // At the target a claim of correctness is the truth.
            if (query != target_) return Response::confirm();
            break;
        }
      }
    }
    ++correct_;
    auto valid = valid_responses(query);
    if (valid.empty()) throw InvariantError("oracle: no correct response exists (graph violates the shortest-path property)");
    if (config_.valid_choice == ValidChoice::adversarial_valid && !weights.empty())
      return heaviest(query, valid, weights);
    return valid[uniform_index(rng_, valid.size())];
  }

 private:
  bool is_valid_edge(double d_query_target, const FeedbackEdge& e) const {
    double rest = domain_->distance(e.target, target_);
    return std::abs(rest - (d_query_target - e.length)) <= kLengthTol * std::max(1.0, d_query_target);
  }

  // Response leaving the most weight consistent; ties go to the smallest
  // feedback id, with confirmation ordered first.
  Response heaviest(ModelId query, const std::vector<Response>& options,
                    std::span<const double> weights) const {
    auto support = weight_support(weights);
    const Response* best = nullptr;
    double best_w = -1.0;
    for (const Response& r : options) {
      double w = reach_weight(*domain_, weights, support, query, r);
      bool tie_wins = best && w == best_w && !best->confirmed &&
                      (r.confirmed || r.feedback < best->feedback);
      if (w > best_w || tie_wins) {
        best_w = w;
        best = &r;
      }
    }
    return *best;
  }

  const DomainAdapter* domain_;
  ModelId target_;
  OracleConfig config_;
  Rng rng_;
  std::size_t responses_ = 0;
  std::size_t correct_ = 0;
};

}  // namespace eqlearn
