#include "evalues/tables.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "evalues/csv.hpp"

namespace evalues {

ValueTable::ValueTable(const TabularMdp& mdp, double init_value)
    : num_states_(mdp.num_states()),
      num_actions_(mdp.num_actions()),
      init_value_(init_value),
      valid_actions_(mdp.valid_action_counts().begin(),
                     mdp.valid_action_counts().end()),
      q_(static_cast<std::size_t>(num_states_) * num_actions_, init_value) {}

ValueTable::ValueTable(int num_states, int num_actions, double init_value)
    : num_states_(num_states),
      num_actions_(num_actions),
      init_value_(init_value),
      valid_actions_(static_cast<std::size_t>(num_states), num_actions),
      q_(static_cast<std::size_t>(num_states) * num_actions, init_value) {}

double ValueTable::max_valid(StateId s) const {
  auto vals = valid_row(s);
  if (vals.empty()) return 0.0;
  return *std::max_element(vals.begin(), vals.end());
}

ExplorationTable::ExplorationTable(const TabularMdp& mdp, double alpha_e,
                                   double gamma_e)
    : ExplorationTable(mdp.num_states(), mdp.num_actions(), alpha_e, gamma_e) {}

ExplorationTable::ExplorationTable(int num_states, int num_actions,
                                   double alpha_e, double gamma_e)
    : num_states_(num_states),
      num_actions_(num_actions),
      alpha_e_(alpha_e),
      gamma_e_(gamma_e),
      e_(static_cast<std::size_t>(num_states) * num_actions, 1.0) {
  if (!(alpha_e > 0.0 && alpha_e < 1.0)) {
    throw std::invalid_argument("exploration learning rate must be in (0, 1)");
  }
  if (!(gamma_e >= 0.0 && gamma_e < 1.0)) {
    throw std::invalid_argument("exploration discount must be in [0, 1)");
  }
}

long long VisitCounter::total() const {
  return std::accumulate(c_.begin(), c_.end(), 0LL);
}

void q_update(ValueTable& q, const Transition& tr, double alpha, double gamma) {
  double bootstrap = tr.done ? 0.0 : q.max_valid(tr.s_next);
  double target = tr.r + gamma * bootstrap;
  double& cell = q.at(tr.s, tr.a);
  cell = (1.0 - alpha) * cell + alpha * target;
}

void e_update(ExplorationTable& e, StateId s, ActionId a, StateId s_next,
              ActionId a_next, bool done) {
  double bootstrap = done ? 0.0 : e.at(s_next, a_next);
  double& cell = e.at(s, a);
  cell = (1.0 - e.alpha_e()) * cell + e.alpha_e() * e.gamma_e() * bootstrap;
}

double generalized_counter_value(double e, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("learning rate must be in (0, 1)");
  }
  if (!(e > 0.0) || e > 1.0) {
    throw std::logic_error(
        "exploration value outside (0, 1]; generalized counter undefined");
  }
  double g = std::log(e) / std::log1p(-alpha);
  return g == 0.0 ? 0.0 : g;  // never -0 (e = 1 gives log 0 over a negative)
}

double generalized_counter(const ExplorationTable& e, StateId s, ActionId a) {
  return generalized_counter_value(e.at(s, a), e.alpha_e());
}

void write_table_snapshot(std::ostream& os, const TabularMdp& mdp,
                          const ValueTable& q, const ExplorationTable& e,
                          const VisitCounter& c) {
  os << "s,a,q,e,c\n";
  for (int s = 0; s < mdp.num_states(); ++s) {
    for (int a = 0; a < mdp.valid_actions(StateId{s}); ++a) {
      StateId sid{s};
      ActionId aid{a};
      os << s << ',' << a << ',' << format_double(q.at(sid, aid)) << ','
         << format_double(e.at(sid, aid)) << ',' << c.at(sid, aid) << '\n';
    }
  }
}

}  // namespace evalues
