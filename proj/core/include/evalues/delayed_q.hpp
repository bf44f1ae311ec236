#pragma once

#include <vector>

#include "evalues/mdp.hpp"
#include "evalues/tables.hpp"

namespace evalues {

/// State of the Delayed Q-Learning algorithm: optimistic Q-values updated in
/// batches of m samples, an update succeeding only when it would lower the
/// value by at least epsilon1. PAC-MDP for rewards in [0, 1]; construction
/// rejects MDPs whose rewards can leave that range.
class DelayedQState {
 public:
  DelayedQState(const TabularMdp& mdp, double gamma, int m, double epsilon1);

  const ValueTable& q() const { return q_; }
  int m() const { return m_; }
  double epsilon1() const { return epsilon1_; }
  double gamma() const { return gamma_; }

  bool learn_flag(StateId s, ActionId a) const {
    return learn_[index(s, a)] != 0;
  }
  int batch_count(StateId s, ActionId a) const { return l_[index(s, a)]; }

  /// Processes one observed transition. Accumulates the one-step target while
  /// the pair's learn flag is set; every m-th sample attempts an update.
  /// A failed attempt after the most recent successful one anywhere clears
  /// the flag; a later successful update elsewhere re-arms it.
  void step(const Transition& tr);

 private:
  int index(StateId s, ActionId a) const { return s.v * q_.num_actions() + a.v; }

  ValueTable q_;
  double gamma_;
  int m_;
  double epsilon1_;
  std::vector<double> u_;
  std::vector<int> l_;
  std::vector<long long> t_last_;
  std::vector<char> learn_;
  long long t_star_ = 0;
  long long t_ = 0;
};

void delayed_q_step(DelayedQState& dq, const Transition& tr);

}  // namespace evalues
