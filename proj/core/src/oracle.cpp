#include "evalues/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "evalues/csv.hpp"

namespace evalues {
namespace {

constexpr double kResidualTol = 1e-9;
constexpr long long kOccupancyHorizon = 1000000;

}  // namespace

OptimalSolution value_iteration(const TabularMdp& mdp, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  double gamma = mdp.discount();
  OptimalSolution sol;
  sol.num_states = mdp.num_states();
  sol.num_actions = mdp.num_actions();
  sol.q_star.assign(
      static_cast<std::size_t>(sol.num_states) * sol.num_actions, 0.0);
  sol.pi_star.assign(static_cast<std::size_t>(sol.num_states), ActionId{0});

  // With gamma = 0 one backup is exact; the contraction-based stop margin
  // degenerates, so plain tol is used.
  double stop = gamma > 0.0 ? tol * (1.0 - gamma) / gamma : tol;
  std::vector<double> next(sol.q_star.size(), 0.0);
  while (true) {
    double change = 0.0;
    for (int s = 0; s < sol.num_states; ++s) {
      StateId sid{s};
      if (mdp.is_terminal(sid)) continue;
      for (int a = 0; a < mdp.valid_actions(sid); ++a) {
        ActionId aid{a};
        double value = mdp.expected_reward(sid, aid);
        for (const NextState& ns : mdp.transition(sid, aid)) {
          if (mdp.is_terminal(ns.s)) continue;
          double best = 0.0;
          bool first = true;
          for (int a2 = 0; a2 < mdp.valid_actions(ns.s); ++a2) {
            double q = sol.q_star[static_cast<std::size_t>(ns.s.v) *
                                      sol.num_actions +
                                  a2];
            if (first || q > best) {
              best = q;
              first = false;
            }
          }
          value += gamma * ns.prob * best;
        }
        std::size_t idx = static_cast<std::size_t>(s) * sol.num_actions + a;
        change = std::max(change, std::abs(value - sol.q_star[idx]));
        next[idx] = value;
      }
    }
    for (int s = 0; s < sol.num_states; ++s) {
      StateId sid{s};
      if (mdp.is_terminal(sid)) continue;
      for (int a = 0; a < mdp.valid_actions(sid); ++a) {
        std::size_t idx = static_cast<std::size_t>(s) * sol.num_actions + a;
        sol.q_star[idx] = next[idx];
      }
    }
    if (change < stop) break;
  }

  for (int s = 0; s < sol.num_states; ++s) {
    StateId sid{s};
    if (mdp.is_terminal(sid)) continue;
    int best = 0;
    double best_q = sol.q_star[static_cast<std::size_t>(s) * sol.num_actions];
    for (int a = 1; a < mdp.valid_actions(sid); ++a) {
      double q = sol.q_star[static_cast<std::size_t>(s) * sol.num_actions + a];
      if (q > best_q) {
        best_q = q;
        best = a;
      }
    }
    sol.pi_star[static_cast<std::size_t>(s)] = ActionId{best};
  }

  optimal_occupancy(mdp, sol);
  return sol;
}

void optimal_occupancy(const TabularMdp& mdp, OptimalSolution& sol) {
  sol.occupancy.assign(
      static_cast<std::size_t>(sol.num_states) * sol.num_actions, 0.0);
  sol.occupancy_truncated = false;

  std::vector<double> mass(static_cast<std::size_t>(sol.num_states), 0.0);
  StateId init = mdp.initial_state();
  if (mdp.is_terminal(init)) return;
  mass[static_cast<std::size_t>(init.v)] = 1.0;
  double live = 1.0;

  std::vector<double> next_mass(mass.size(), 0.0);
  long long steps = 0;
  while (live >= kResidualTol) {
    if (steps++ >= kOccupancyHorizon) {
      sol.occupancy_truncated = true;
      break;
    }
    std::fill(next_mass.begin(), next_mass.end(), 0.0);
    for (int s = 0; s < sol.num_states; ++s) {
      double p = mass[static_cast<std::size_t>(s)];
      if (p <= 0.0) continue;
      StateId sid{s};
      ActionId a = sol.pi_star[static_cast<std::size_t>(s)];
      sol.occupancy[static_cast<std::size_t>(s) * sol.num_actions + a.v] += p;
      for (const NextState& ns : mdp.transition(sid, a)) {
        if (mdp.is_terminal(ns.s)) continue;  // absorbed
        next_mass[static_cast<std::size_t>(ns.s.v)] += p * ns.prob;
      }
    }
    mass.swap(next_mass);
    live = 0.0;
    for (double p : mass) live += p;
  }

  double total = 0.0;
  for (double p : sol.occupancy) total += p;
  if (total > 0.0) {
    for (double& p : sol.occupancy) p /= total;
  }
}

double mse(const ValueTable& q, const OptimalSolution& sol) {
  if (q.num_states() != sol.num_states || q.num_actions() != sol.num_actions) {
    throw std::invalid_argument("table and oracle shapes differ");
  }
  double sum = 0.0;
  for (int s = 0; s < sol.num_states; ++s) {
    for (int a = 0; a < sol.num_actions; ++a) {
      StateId sid{s};
      ActionId aid{a};
      double occ = sol.occupancy_at(sid, aid);
      if (occ <= 0.0) continue;
      double diff = q.at(sid, aid) - sol.q_star_at(sid, aid);
      sum += occ * diff * diff;
    }
  }
  return sum;
}

std::vector<double> normalize_series(const std::vector<double>& series,
                                     bool* all_zero) {
  if (all_zero) *all_zero = false;
  if (series.empty()) return series;
  double max = *std::max_element(series.begin(), series.end());
  if (max == 0.0) {
    if (all_zero) *all_zero = true;
    return series;
  }
  std::vector<double> out(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) out[i] = series[i] / max;
  return out;
}

void write_oracle_csv(std::ostream& os, const TabularMdp& mdp,
                      const OptimalSolution& sol) {
  os << "state,action,q_star,is_optimal,occupancy\n";
  for (int s = 0; s < mdp.num_states(); ++s) {
    StateId sid{s};
    if (mdp.is_terminal(sid)) continue;
    for (int a = 0; a < mdp.valid_actions(sid); ++a) {
      ActionId aid{a};
      int is_optimal = sol.pi_star[static_cast<std::size_t>(s)].v == a ? 1 : 0;
      os << s << ',' << a << ',' << format_double(sol.q_star_at(sid, aid))
         << ',' << is_optimal << ','
         << format_double(sol.occupancy_at(sid, aid)) << '\n';
    }
  }
}

}  // namespace evalues
