#include "evalues/policies.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace evalues {

int greedy_index(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("cannot take argmax of no actions");
  }
  return static_cast<int>(
      std::max_element(values.begin(), values.end()) - values.begin());
}

ActionId greedy_action(const ValueTable& q, StateId s) {
  return ActionId{greedy_index(q.valid_row(s))};
}

std::vector<double> policy_distribution(const StochasticRule& rule,
                                        std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("cannot build a policy over no actions");
  }
  std::size_t n = values.size();
  std::vector<double> probs(n, 0.0);
  switch (rule.kind) {
    case RuleKind::kEpsilonGreedy: {
      if (!(rule.epsilon >= 0.0 && rule.epsilon <= 1.0)) {
        throw std::invalid_argument("epsilon must be in [0, 1]");
      }
      double base = rule.epsilon / static_cast<double>(n);
      std::fill(probs.begin(), probs.end(), base);
      probs[static_cast<std::size_t>(greedy_index(values))] +=
          1.0 - rule.epsilon;
      break;
    }
    case RuleKind::kSoftmax: {
      if (!(rule.tau > 0.0)) {
        throw std::invalid_argument("softmax temperature must be positive");
      }
      double vmax = *std::max_element(values.begin(), values.end());
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        probs[i] = std::exp((values[i] - vmax) / rule.tau);
        sum += probs[i];
      }
      for (auto& p : probs) p /= sum;
      break;
    }
  }
  return probs;
}

std::vector<double> policy_distribution(const StochasticRule& rule,
                                        const ValueTable& q, StateId s) {
  return policy_distribution(rule, q.valid_row(s));
}

ActionId sample_action(std::span<const double> probs, SeededRng& rng) {
  return ActionId{static_cast<int>(rng.sample_index(probs))};
}

}  // namespace evalues
