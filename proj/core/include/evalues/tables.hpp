#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "evalues/mdp.hpp"

namespace evalues {

/// Dense per-(state, action) store of learned Q-values. Initialized to 0
/// unless stated otherwise. Carries the owning MDP's per-state valid-action
/// counts so bootstrap maxima never range over undefined actions.
class ValueTable {
 public:
  explicit ValueTable(const TabularMdp& mdp, double init_value = 0.0);
  ValueTable(int num_states, int num_actions, double init_value = 0.0);

  double at(StateId s, ActionId a) const { return q_[index(s, a)]; }
  double& at(StateId s, ActionId a) { return q_[index(s, a)]; }

  /// Q-values of all actions of `s` (full action range; only the first
  /// `valid_actions(s)` entries are meaningful).
  std::span<const double> row(StateId s) const {
    return {q_.data() + static_cast<std::size_t>(s.v) * num_actions_,
            static_cast<std::size_t>(num_actions_)};
  }
  /// Q-values of the valid actions of `s`.
  std::span<const double> valid_row(StateId s) const {
    return row(s).first(static_cast<std::size_t>(valid_actions(s)));
  }

  double max_valid(StateId s) const;

  int num_states() const { return num_states_; }
  int num_actions() const { return num_actions_; }
  int valid_actions(StateId s) const { return valid_actions_[s.v]; }
  double init_value() const { return init_value_; }

 private:
  int index(StateId s, ActionId a) const { return s.v * num_actions_ + a.v; }

  int num_states_;
  int num_actions_;
  double init_value_;
  std::vector<int> valid_actions_;
  std::vector<double> q_;
};

/// Dense per-(state, action) store of E-values: action-values of the
/// reward-free twin MDP, learned on-policy. Starts at exactly 1 everywhere
/// and stays in (0, 1] forever; the decay toward 0 encodes accumulated
/// exploration.
class ExplorationTable {
 public:
  ExplorationTable(const TabularMdp& mdp, double alpha_e, double gamma_e);
  ExplorationTable(int num_states, int num_actions, double alpha_e,
                   double gamma_e);

  double at(StateId s, ActionId a) const { return e_[index(s, a)]; }
  double& at(StateId s, ActionId a) { return e_[index(s, a)]; }

  std::span<const double> row(StateId s) const {
    return {e_.data() + static_cast<std::size_t>(s.v) * num_actions_,
            static_cast<std::size_t>(num_actions_)};
  }

  int num_states() const { return num_states_; }
  int num_actions() const { return num_actions_; }
  double alpha_e() const { return alpha_e_; }
  double gamma_e() const { return gamma_e_; }

 private:
  int index(StateId s, ActionId a) const { return s.v * num_actions_ + a.v; }

  int num_states_;
  int num_actions_;
  double alpha_e_;
  double gamma_e_;
  std::vector<double> e_;
};

/// Plain per-(state, action) visit counters.
class VisitCounter {
 public:
  explicit VisitCounter(const TabularMdp& mdp)
      : VisitCounter(mdp.num_states(), mdp.num_actions()) {}
  VisitCounter(int num_states, int num_actions)
      : num_states_(num_states),
        num_actions_(num_actions),
        c_(static_cast<std::size_t>(num_states) * num_actions, 0) {}

  long long at(StateId s, ActionId a) const { return c_[index(s, a)]; }
  void increment(StateId s, ActionId a) { ++c_[index(s, a)]; }

  std::span<const long long> row(StateId s) const {
    return {c_.data() + static_cast<std::size_t>(s.v) * num_actions_,
            static_cast<std::size_t>(num_actions_)};
  }

  long long total() const;
  int num_states() const { return num_states_; }
  int num_actions() const { return num_actions_; }

 private:
  int index(StateId s, ActionId a) const { return s.v * num_actions_ + a.v; }

  int num_states_;
  int num_actions_;
  std::vector<long long> c_;
};

/// Q-Learning update for one observed transition:
///   Q(s,a) <- (1-alpha) Q(s,a) + alpha (r + gamma max_a' Q(s',a'))
/// with the bootstrap term replaced by 0 on terminal transitions.
void q_update(ValueTable& q, const Transition& tr, double alpha, double gamma);

/// On-policy SARSA update of an E-value on the reward-free twin MDP:
///   E(s,a) <- (1-alpha_E) E(s,a) + alpha_E gamma_E E(s',a')
/// `a_next` must be the action actually selected at `s_next`; on terminal
/// transitions the bootstrap term is 0 and `a_next` is ignored.
void e_update(ExplorationTable& e, StateId s, ActionId a, StateId s_next,
              ActionId a_next, bool done);

/// Generalized counter of a single E-value: log base (1-alpha) of e.
/// Equals the exact visit count when gamma_E = 0 or at terminal-leading
/// pairs, and a trajectory-weighted effective visit count otherwise.
/// Throws std::logic_error if e is outside (0, 1].
double generalized_counter_value(double e, double alpha);

double generalized_counter(const ExplorationTable& e, StateId s, ActionId a);

/// Flat CSV snapshot of the learned tables: header `s,a,q,e,c`, one row per
/// valid (state, action) pair.
void write_table_snapshot(std::ostream& os, const TabularMdp& mdp,
                          const ValueTable& q, const ExplorationTable& e,
                          const VisitCounter& c);

}  // namespace evalues
