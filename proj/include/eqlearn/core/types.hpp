#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace eqlearn {

// Dense node index into a feedback graph (0..N-1).
using ModelId = std::size_t;

inline constexpr ModelId kNoModel = std::numeric_limits<ModelId>::max();
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Tolerance used when comparing path lengths. All shipped domains use
// integral edge lengths, so this only absorbs summation round-off.
inline constexpr double kLengthTol = 1e-9;

struct Edge {
  ModelId target = 0;
  double length = 1.0;
  // Marks edges that correspond to a legal user response. Graphs may carry
  // additional non-feedback edges (e.g. reverse insertion moves).
  bool is_feedback = true;
};

// A feedback edge out of a fixed source model.
struct FeedbackEdge {
  ModelId target = 0;
  double length = 1.0;
};

// User response to an equivalence query: either "this is correct" or a
// feedback model s' reached over an edge of the given length.
struct Response {
  bool confirmed = false;
  ModelId feedback = kNoModel;
  double length = 0.0;

  static Response confirm() { return Response{true, kNoModel, 0.0}; }
  static Response move(ModelId to, double len) { return Response{false, to, len}; }

  friend bool operator==(const Response&, const Response&) = default;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised for invalid inputs and configurations (exit code 2 in the CLI).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Raised when a contractual invariant is violated at runtime.
class InvariantError : public Error {
 public:
  using Error::Error;
};

using Rng = std::mt19937_64;

// Per-trial generator: seed = base_seed + trial_index.
inline Rng make_trial_rng(std::uint64_t base_seed, std::uint64_t trial_index) {
  return Rng(base_seed + trial_index);
}

inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  if (n == 0) throw Error("uniform_index: empty range");
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline double uniform_real(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace eqlearn
