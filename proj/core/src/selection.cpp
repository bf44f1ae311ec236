#include "evalues/selection.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace evalues {

int lll_select(std::span<const double> f, std::span<const double> gc) {
  if (f.empty()) throw std::invalid_argument("no actions to select from");
  if (f.size() != gc.size()) {
    throw std::invalid_argument("policy and counter spans differ in length");
  }
  int best = -1;
  double best_score = -std::numeric_limits<double>::infinity();
  bool any_positive = false;
  for (std::size_t i = 0; i < f.size(); ++i) {
    double score;
    if (f[i] <= 0.0) {
      score = -std::numeric_limits<double>::infinity();
    } else if (gc[i] <= 0.0) {
      any_positive = true;
      score = std::numeric_limits<double>::infinity();
    } else {
      any_positive = true;
      score = std::log(f[i]) - std::log(gc[i]);
    }
    if (score > best_score) {
      best_score = score;
      best = static_cast<int>(i);
    }
  }
  if (!any_positive) {
    throw std::logic_error("policy assigns probability 0 to every action");
  }
  if (best < 0) best = 0;
  return best;
}

int mindiff_select(std::span<const double> f,
                   std::span<const long long> counts, long long total) {
  if (f.empty()) throw std::invalid_argument("no actions to select from");
  if (counts.size() != f.size()) {
    throw std::invalid_argument("count and policy spans differ in length");
  }
  int best = 0;
  double best_score = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < f.size(); ++i) {
    double ratio =
        total == 0 ? 0.0
                   : static_cast<double>(counts[i]) / static_cast<double>(total);
    double score = ratio - f[i];
    if (score < best_score) {
      best_score = score;
      best = static_cast<int>(i);
    }
  }
  return best;
}

int ucb_select(std::span<const double> q, std::span<const double> counts,
               long long t) {
  if (q.empty()) throw std::invalid_argument("no actions to select from");
  if (q.size() != counts.size()) {
    throw std::invalid_argument("value and counter spans differ in length");
  }
  if (t < 1) throw std::invalid_argument("timestep must be >= 1");
  int best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  double log_t = std::log(static_cast<double>(t));
  for (std::size_t i = 0; i < q.size(); ++i) {
    double score = counts[i] <= 0.0
                       ? std::numeric_limits<double>::infinity()
                       : q[i] + std::sqrt(log_t / counts[i]);
    if (score > best_score) {
      best_score = score;
      best = static_cast<int>(i);
    }
  }
  return best;
}

namespace {

std::vector<double> gc_row(const ExplorationTable& e, StateId s, int n) {
  std::vector<double> gc(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) gc[a] = generalized_counter(e, s, ActionId{a});
  return gc;
}

std::vector<double> count_row(const VisitCounter& c, StateId s, int n) {
  std::vector<double> counts(static_cast<std::size_t>(n));
  auto row = c.row(s);
  for (int a = 0; a < n; ++a) counts[a] = static_cast<double>(row[a]);
  return counts;
}

}  // namespace

ActionId lll_action(const StochasticRule& rule, const ValueTable& q,
                    const ExplorationTable& e, StateId s) {
  int n = q.valid_actions(s);
  auto f = policy_distribution(rule, q, s);
  auto gc = gc_row(e, s, n);
  return ActionId{lll_select(f, gc)};
}

ActionId lll_action(const StochasticRule& rule, const ValueTable& q,
                    const VisitCounter& c, StateId s) {
  int n = q.valid_actions(s);
  auto f = policy_distribution(rule, q, s);
  auto counts = count_row(c, s, n);
  return ActionId{lll_select(f, counts)};
}

ActionId ucb_action(const ValueTable& q, const ExplorationTable& e, StateId s,
                    long long t) {
  int n = q.valid_actions(s);
  return ActionId{ucb_select(q.valid_row(s), gc_row(e, s, n), t)};
}

ActionId ucb_action(const ValueTable& q, const VisitCounter& c, StateId s,
                    long long t) {
  int n = q.valid_actions(s);
  return ActionId{ucb_select(q.valid_row(s), count_row(c, s, n), t)};
}

double default_beta(BonusForm form) {
  return form == BonusForm::kInverseGc ? 1.0 : 0.05;
}

double reward_bonus(const RewardBonus& bonus, double r, double gc_post,
                    double alpha) {
  if (!(gc_post > 0.0)) {
    throw std::logic_error(
        "reward bonus needs a positive post-update generalized counter");
  }
  switch (bonus.form) {
    case BonusForm::kInverseGc:
      return r + bonus.beta / gc_post;
    case BonusForm::kInverseSqrtNegLog:
      return r + bonus.beta / std::sqrt(gc_post * -std::log1p(-alpha));
  }
  throw std::logic_error("unknown bonus form");
}

}  // namespace evalues
