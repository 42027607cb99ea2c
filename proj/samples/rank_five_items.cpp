// Learns a hidden order of five items from adjacent-swap corrections.
#include <iostream>

#include "eqlearn/ranking/ranker.hpp"
#include "eqlearn/ranking/responders.hpp"

int main() {
  using namespace eqlearn;
  using namespace eqlearn::ranking;
  Rng rng(42);
  Permutation hidden = random_permutation(5, rng);
  TargetRankingResponder user(hidden, FeedbackKind::bubble, 1.0, 7);
  auto result = learn_ranking(5, user, RankerOptions{}, rng);
  std::cout << "hidden  " << hidden.str() << "\nlearned " << result.model.str() << "\nqueries " << result.queries << '\n';
  return result.model == hidden ? 0 : 1;
}
