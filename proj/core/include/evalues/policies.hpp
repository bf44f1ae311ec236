#pragma once

#include <span>
#include <vector>

#include "evalues/mdp.hpp"
#include "evalues/rng.hpp"
#include "evalues/tables.hpp"

namespace evalues {

enum class RuleKind { kEpsilonGreedy, kSoftmax };

/// A stochastic action-selection rule mapping action-values to a probability
/// distribution over actions. Each rule uses only its own parameter.
struct StochasticRule {
  RuleKind kind = RuleKind::kEpsilonGreedy;
  double epsilon = 0.1;
  double tau = 0.25;
};

/// Lowest-index argmax over `values`. Throws std::invalid_argument if empty.
int greedy_index(std::span<const double> values);

ActionId greedy_action(const ValueTable& q, StateId s);

/// Distribution the rule assigns to actions with the given values:
/// epsilon-greedy spreads epsilon uniformly and puts the rest on the greedy
/// index; softmax is exp(v / tau) normalized (computed max-shifted).
/// Entries are nonnegative and sum to 1 up to round-off.
std::vector<double> policy_distribution(const StochasticRule& rule,
                                        std::span<const double> values);

/// Distribution over the valid actions of `s` under the rule applied to Q.
std::vector<double> policy_distribution(const StochasticRule& rule,
                                        const ValueTable& q, StateId s);

ActionId sample_action(std::span<const double> probs, SeededRng& rng);

}  // namespace evalues
