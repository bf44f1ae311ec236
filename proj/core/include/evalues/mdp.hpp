#pragma once

#include <span>
#include <vector>

#include "evalues/rng.hpp"

namespace evalues {

/// Index of a state in a TabularMdp.
struct StateId {
  int v = 0;
  friend bool operator==(StateId a, StateId b) { return a.v == b.v; }
  friend bool operator!=(StateId a, StateId b) { return a.v != b.v; }
};

/// Index of an action.
struct ActionId {
  int v = 0;
  friend bool operator==(ActionId a, ActionId b) { return a.v == b.v; }
  friend bool operator!=(ActionId a, ActionId b) { return a.v != b.v; }
};

/// One observed step: took `a` in `s`, received `r`, landed in `s_next`.
/// `done` is set when `s_next` is terminal; the episode ends there.
struct Transition {
  StateId s;
  ActionId a;
  double r = 0.0;
  StateId s_next;
  bool done = false;
};

/// A weighted next-state outcome of one (state, action) pair.
struct NextState {
  StateId s;
  double prob = 1.0;
};

/// A weighted reward outcome of one (state, action) pair.
struct RewardDraw {
  double value = 0.0;
  double prob = 1.0;
};

/// Finite MDP with explicit transition and reward distributions. Doubles as
/// the ground-truth model for value iteration and as the simulator agents
/// step through.
///
/// Rewards are finite discrete distributions per (s, a); every bundled
/// environment is deterministic-reward, so this is a strict superset of what
/// they need while keeping dynamic-programming solutions exact.
///
/// Episodes end on entry into a terminal state. Terminal states carry no
/// outgoing transitions; stepping from one is a contract violation.
///
/// States may expose fewer than `num_actions` actions (see
/// `set_valid_actions`); tables stay dense over the full action range and
/// the extra pairs are simply never visited.
class TabularMdp {
 public:
  TabularMdp(int num_states, int num_actions, double discount);

  // -- construction -----------------------------------------------------
  void set_initial_state(StateId s);
  void mark_terminal(StateId s);
  void set_valid_actions(StateId s, int count);
  void set_transition(StateId s, ActionId a, std::vector<NextState> outcomes);
  void set_reward(StateId s, ActionId a, std::vector<RewardDraw> outcomes);

  /// Checks the structural invariants: per-pair probabilities sum to
  /// 1 +- 1e-12, terminal states have no outgoing transitions, every
  /// non-terminal valid pair has a transition. Throws std::invalid_argument.
  void validate() const;

  // -- inspection -------------------------------------------------------
  int num_states() const { return num_states_; }
  int num_actions() const { return num_actions_; }
  double discount() const { return discount_; }
  StateId initial_state() const { return initial_; }
  bool is_terminal(StateId s) const { return terminal_[s.v]; }
  int valid_actions(StateId s) const { return valid_actions_[s.v]; }
  std::span<const int> valid_action_counts() const { return valid_actions_; }

  std::span<const NextState> transition(StateId s, ActionId a) const {
    return transitions_[pair_index(s, a)];
  }
  std::span<const RewardDraw> reward(StateId s, ActionId a) const {
    return rewards_[pair_index(s, a)];
  }
  double expected_reward(StateId s, ActionId a) const;

  /// Smallest and largest reward value anywhere in the MDP.
  std::pair<double, double> reward_range() const;

  int pair_index(StateId s, ActionId a) const {
    return s.v * num_actions_ + a.v;
  }
  int num_pairs() const { return num_states_ * num_actions_; }

 private:
  void check_state(StateId s) const;
  void check_pair(StateId s, ActionId a) const;

  int num_states_;
  int num_actions_;
  double discount_;
  StateId initial_{0};
  std::vector<bool> terminal_;
  std::vector<int> valid_actions_;
  std::vector<std::vector<NextState>> transitions_;
  std::vector<std::vector<RewardDraw>> rewards_;
};

/// Starts an episode: returns the MDP's initial state.
StateId reset(const TabularMdp& mdp);

/// Samples one transition. `s` must be non-terminal and `a` valid for it.
/// Draw order is fixed (next state, then reward); point-mass outcomes
/// consume no randomness.
Transition step(const TabularMdp& mdp, StateId s, ActionId a, SeededRng& rng);

}  // namespace evalues
