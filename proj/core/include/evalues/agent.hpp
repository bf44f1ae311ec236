#pragma once

#include <optional>
#include <string>
#include <vector>

#include "evalues/delayed_q.hpp"
#include "evalues/mdp.hpp"
#include "evalues/policies.hpp"
#include "evalues/rng.hpp"
#include "evalues/selection.hpp"
#include "evalues/tables.hpp"

namespace evalues {

/// How an agent realizes its action choice each step.
enum class SelectMode {
  kStochastic,     // sample the rule's distribution
  kLllCounter,     // LLL over raw visit counts
  kLllEvalue,      // LLL over generalized counters
  kUcbCounter,     // UCB over raw visit counts
  kUcbEvalue,      // UCB over generalized counters
  kGreedyDelayed,  // greedy on the delayed-Q table
};

/// Declarative description of one tabular agent.
struct AgentSpec {
  std::string kind = "egreedy";
  StochasticRule rule;
  double alpha = 0.1;
  double gamma = 0.9;
  double alpha_e = 0.1;
  double gamma_e = 0.9;
  std::optional<RewardBonus> bonus;
  int delayed_m = 10;
  double delayed_epsilon1 = 0.01;
};

/// Addressable agent kind names, in registry order.
const std::vector<std::string>& agent_kind_names();

/// Structural meaning of a kind name. Throws std::invalid_argument listing
/// the valid names on an unknown kind.
struct AgentKindInfo {
  SelectMode mode = SelectMode::kStochastic;
  RuleKind rule = RuleKind::kEpsilonGreedy;
  bool has_bonus = false;
  bool is_delayed = false;
};
AgentKindInfo parse_agent_kind(const std::string& kind);

struct EpisodeResult {
  double undiscounted_return = 0.0;
  int steps = 0;
  bool reached_terminal = false;
};

/// A complete tabular learner: Q-Learning (or Delayed Q-Learning) plus
/// always-on E-values and visit counters, acting through the kind's
/// selection mode. Per step: select a' at s' from pre-update tables, then
/// e_update, counter increment, bonus (if any) from the post-update
/// generalized counter, and finally the Q update.
class TabularAgent {
 public:
  TabularAgent(const TabularMdp& mdp, const AgentSpec& spec);

  ActionId select(StateId s, SeededRng& rng) const;
  EpisodeResult run_episode(SeededRng& rng, int max_steps);

  /// The Q-values steering behavior (the delayed-Q table for "delayedq").
  const ValueTable& q_view() const { return dq_ ? dq_->q() : q_; }
  const ValueTable& q() const { return q_; }
  const ExplorationTable& e() const { return e_; }
  const VisitCounter& counts() const { return c_; }
  const AgentSpec& spec() const { return spec_; }
  long long lifetime_steps() const { return steps_; }

 private:
  const TabularMdp* mdp_;
  AgentSpec spec_;
  AgentKindInfo info_;
  ValueTable q_;
  ExplorationTable e_;
  VisitCounter c_;
  std::optional<DelayedQState> dq_;
  long long steps_ = 0;
};

struct EpisodeTrace {
  std::vector<Transition> transitions;
  double undiscounted_return = 0.0;
  bool reached_terminal = false;
};

/// One episode of Q-Learning with LLL selection over generalized counters,
/// operating on caller-owned tables: at each step choose a via
/// lll_select(f_Q(.|s), gc(s,.)), choose a' the same way at s' before any
/// update, apply e_update toward the realized a' and q_update with the max
/// target, then take a' next.
EpisodeTrace lll_episode(const TabularMdp& mdp, const StochasticRule& rule,
                          ValueTable& q, ExplorationTable& e, double alpha,
                          double gamma, SeededRng& rng, int max_steps);

}  // namespace evalues
