#pragma once

#include <iosfwd>
#include <vector>

#include "evalues/mdp.hpp"
#include "evalues/tables.hpp"

namespace evalues {

/// Ground truth for a tabular MDP: optimal action-values, the lowest-index
/// optimal policy, and the undiscounted state-action occupancy of that
/// policy from the initial state until absorption, normalized to sum 1.
struct OptimalSolution {
  int num_states = 0;
  int num_actions = 0;
  std::vector<double> q_star;    // flat (s, a), terminal pairs 0
  std::vector<ActionId> pi_star; // per state; terminal states keep action 0
  std::vector<double> occupancy; // flat (s, a), sums to 1
  /// Set when occupancy propagation hit the step horizon before the
  /// residual live mass dropped below threshold (e.g. a policy cycling
  /// forever); the returned occupancy is still normalized.
  bool occupancy_truncated = false;

  double q_star_at(StateId s, ActionId a) const {
    return q_star[static_cast<std::size_t>(s.v) * num_actions + a.v];
  }
  double occupancy_at(StateId s, ActionId a) const {
    return occupancy[static_cast<std::size_t>(s.v) * num_actions + a.v];
  }
};

/// Value iteration to sup-norm fixed-point tolerance `tol` (stops when one
/// backup changes no entry by tol * (1 - gamma) / gamma), then the greedy
/// policy and its occupancy.
OptimalSolution value_iteration(const TabularMdp& mdp, double tol = 1e-10);

/// Expected undiscounted visit frequency of each (s, a) under `pi_star`
/// from the initial state until absorption: state mass is propagated
/// through the policy's transitions until the live (non-absorbed) mass
/// falls below 1e-9 or 10^6 propagation steps, then per-pair mass is
/// normalized to sum 1. Hitting the horizon sets `occupancy_truncated`
/// on the result written into `sol`.
void optimal_occupancy(const TabularMdp& mdp, OptimalSolution& sol);

/// The occupancy-weighted squared error sum_{s,a} occ(s,a) (Q - Q*)^2.
double mse(const ValueTable& q, const OptimalSolution& sol);

/// Series divided by its maximum. An all-zero series is returned unchanged
/// and `*all_zero` (when given) is set so callers can warn.
std::vector<double> normalize_series(const std::vector<double>& series,
                                     bool* all_zero = nullptr);

/// Oracle dump rows `state,action,q_star,is_optimal,occupancy` over the
/// valid actions of non-terminal states.
void write_oracle_csv(std::ostream& os, const TabularMdp& mdp,
                      const OptimalSolution& sol);

}  // namespace evalues
