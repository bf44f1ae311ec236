#include "evalues/mdp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace evalues {

namespace {
constexpr double kProbTol = 1e-12;
}

TabularMdp::TabularMdp(int num_states, int num_actions, double discount)
    : num_states_(num_states),
      num_actions_(num_actions),
      discount_(discount),
      terminal_(static_cast<std::size_t>(num_states), false),
      valid_actions_(static_cast<std::size_t>(num_states), num_actions),
      transitions_(static_cast<std::size_t>(num_states) * num_actions),
      rewards_(static_cast<std::size_t>(num_states) * num_actions) {
  if (num_states < 1 || num_actions < 1) {
    throw std::invalid_argument("TabularMdp: need at least one state and action");
  }
  if (!(discount >= 0.0 && discount < 1.0)) {
    throw std::invalid_argument("TabularMdp: discount must be in [0, 1)");
  }
}

void TabularMdp::check_state(StateId s) const {
  if (s.v < 0 || s.v >= num_states_) {
    throw std::out_of_range("TabularMdp: state " + std::to_string(s.v) +
                            " out of range");
  }
}

void TabularMdp::check_pair(StateId s, ActionId a) const {
  check_state(s);
  if (a.v < 0 || a.v >= num_actions_) {
    throw std::out_of_range("TabularMdp: action " + std::to_string(a.v) +
                            " out of range");
  }
}

void TabularMdp::set_initial_state(StateId s) {
  check_state(s);
  initial_ = s;
}

void TabularMdp::mark_terminal(StateId s) {
  check_state(s);
  terminal_[s.v] = true;
}

void TabularMdp::set_valid_actions(StateId s, int count) {
  check_state(s);
  if (count < 1 || count > num_actions_) {
    throw std::invalid_argument("TabularMdp: invalid action count");
  }
  valid_actions_[s.v] = count;
}

void TabularMdp::set_transition(StateId s, ActionId a,
                                std::vector<NextState> outcomes) {
  check_pair(s, a);
  transitions_[pair_index(s, a)] = std::move(outcomes);
}

void TabularMdp::set_reward(StateId s, ActionId a,
                            std::vector<RewardDraw> outcomes) {
  check_pair(s, a);
  rewards_[pair_index(s, a)] = std::move(outcomes);
}

void TabularMdp::validate() const {
  for (int s = 0; s < num_states_; ++s) {
    for (int a = 0; a < valid_actions_[s]; ++a) {
      const auto& tr = transitions_[s * num_actions_ + a];
      if (terminal_[s]) {
        if (!tr.empty()) {
          throw std::invalid_argument("TabularMdp: terminal state " +
                                      std::to_string(s) +
                                      " has outgoing transitions");
        }
        continue;
      }
      if (tr.empty()) {
        throw std::invalid_argument("TabularMdp: missing transition for (" +
                                    std::to_string(s) + "," +
                                    std::to_string(a) + ")");
      }
      double psum = 0.0;
      for (const auto& o : tr) {
        if (o.prob < 0.0 || o.s.v < 0 || o.s.v >= num_states_) {
          throw std::invalid_argument("TabularMdp: bad transition outcome");
        }
        psum += o.prob;
      }
      if (std::abs(psum - 1.0) > kProbTol) {
        throw std::invalid_argument(
            "TabularMdp: transition probabilities for (" + std::to_string(s) +
            "," + std::to_string(a) + ") sum to " + std::to_string(psum));
      }
      const auto& rw = rewards_[s * num_actions_ + a];
      if (!rw.empty()) {
        double rsum = 0.0;
        for (const auto& o : rw) {
          if (o.prob < 0.0) {
            throw std::invalid_argument("TabularMdp: negative reward prob");
          }
          rsum += o.prob;
        }
        if (std::abs(rsum - 1.0) > kProbTol) {
          throw std::invalid_argument(
              "TabularMdp: reward probabilities for (" + std::to_string(s) +
              "," + std::to_string(a) + ") sum to " + std::to_string(rsum));
        }
      }
    }
  }
}

double TabularMdp::expected_reward(StateId s, ActionId a) const {
  const auto& rw = rewards_[pair_index(s, a)];
  double er = 0.0;
  for (const auto& o : rw) er += o.value * o.prob;
  return er;
}

std::pair<double, double> TabularMdp::reward_range() const {
  double lo = 0.0, hi = 0.0;
  bool any = false;
  const auto consider = [&](double v) {
    lo = any ? std::min(lo, v) : v;
    hi = any ? std::max(hi, v) : v;
    any = true;
  };
  for (int s = 0; s < num_states_; ++s) {
    if (terminal_[s]) continue;
    for (int a = 0; a < valid_actions_[s]; ++a) {
      const auto& rw = rewards_[s * num_actions_ + a];
      if (rw.empty()) {
        consider(0.0);  // unset reward defaults to 0
        continue;
      }
      for (const auto& o : rw) {
        if (o.prob > 0.0) consider(o.value);
      }
    }
  }
  return {lo, hi};
}

StateId reset(const TabularMdp& mdp) { return mdp.initial_state(); }

Transition step(const TabularMdp& mdp, StateId s, ActionId a, SeededRng& rng) {
  if (mdp.is_terminal(s)) {
    throw std::logic_error("step: episode already ended (state " +
                           std::to_string(s.v) + " is terminal)");
  }
  if (a.v < 0 || a.v >= mdp.valid_actions(s)) {
    throw std::logic_error("step: action " + std::to_string(a.v) +
                           " invalid in state " + std::to_string(s.v));
  }

  const auto outcomes = mdp.transition(s, a);
  StateId next = outcomes.front().s;
  if (outcomes.size() > 1) {
    const double u = rng.uniform01();
    double cum = 0.0;
    for (const auto& o : outcomes) {
      cum += o.prob;
      next = o.s;
      if (u < cum) break;
    }
  }

  const auto rewards = mdp.reward(s, a);
  double r = 0.0;
  if (!rewards.empty()) {
    r = rewards.front().value;
    if (rewards.size() > 1) {
      const double u = rng.uniform01();
      double cum = 0.0;
      for (const auto& o : rewards) {
        cum += o.prob;
        r = o.value;
        if (u < cum) break;
      }
    }
  }

  return Transition{s, a, r, next, mdp.is_terminal(next)};
}

}  // namespace evalues
