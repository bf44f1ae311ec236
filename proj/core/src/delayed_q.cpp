#include "evalues/delayed_q.hpp"

#include <stdexcept>
#include <string>

namespace evalues {

DelayedQState::DelayedQState(const TabularMdp& mdp, double gamma, int m,
                             double epsilon1)
    : q_(mdp, 1.0 / (1.0 - gamma)),
      gamma_(gamma),
      m_(m),
      epsilon1_(epsilon1),
      u_(static_cast<std::size_t>(mdp.num_pairs()), 0.0),
      l_(static_cast<std::size_t>(mdp.num_pairs()), 0),
      t_last_(static_cast<std::size_t>(mdp.num_pairs()), 0),
      learn_(static_cast<std::size_t>(mdp.num_pairs()), 1) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("discount must be in [0, 1)");
  }
  if (m < 1) throw std::invalid_argument("batch size m must be >= 1");
  if (!(epsilon1 > 0.0)) {
    throw std::invalid_argument("epsilon1 must be positive");
  }
  auto [r_lo, r_hi] = mdp.reward_range();
  if (r_lo < 0.0 || r_hi > 1.0) {
    throw std::invalid_argument(
        "delayed Q-Learning requires rewards in [0, 1]; this MDP has rewards "
        "in [" +
        std::to_string(r_lo) + ", " + std::to_string(r_hi) +
        "] (use a normalized variant of the environment)");
  }
}

void DelayedQState::step(const Transition& tr) {
  ++t_;
  int idx = index(tr.s, tr.a);
  if (learn_[idx]) {
    double bootstrap = tr.done ? 0.0 : q_.max_valid(tr.s_next);
    u_[idx] += tr.r + gamma_ * bootstrap;
    ++l_[idx];
    if (l_[idx] == m_) {
      double mean_target = u_[idx] / m_;
      if (q_.at(tr.s, tr.a) - mean_target >= 2.0 * epsilon1_) {
        q_.at(tr.s, tr.a) = mean_target + epsilon1_;
        t_star_ = t_;
      } else if (t_last_[idx] >= t_star_) {
        learn_[idx] = 0;
      }
      t_last_[idx] = t_;
      u_[idx] = 0.0;
      l_[idx] = 0;
    }
  } else if (t_last_[idx] < t_star_) {
    learn_[idx] = 1;
  }
}

void delayed_q_step(DelayedQState& dq, const Transition& tr) { dq.step(tr); }

}  // namespace evalues
