#pragma once

#include <span>

#include "evalues/mdp.hpp"
#include "evalues/policies.hpp"
#include "evalues/tables.hpp"

namespace evalues {

/// Deterministic counter-driven realization of a stochastic policy f:
/// picks argmax_a [log f(a) - log gc(a)], driving empirical frequencies
/// toward f while preferring under-visited actions.
///   f(a) = 0   : the action is never chosen (score -inf);
///   gc(a) <= 0 : unvisited, chosen with top priority when f(a) > 0.
/// Ties break to the lowest index. Throws std::logic_error if every f(a)
/// is 0, std::invalid_argument on empty or mismatched spans.
int lll_select(std::span<const double> f, std::span<const double> gc);

/// Frequency-matching pick: argmin_a [C(a)/total - f(a)], where `total`
/// must equal sum C(a); with total = 0 all ratios count as 0. Ties break to
/// the lowest index. Keeps max_a (C(a)/total - f(a)) <= 1/total every step.
int mindiff_select(std::span<const double> f,
                   std::span<const long long> counts, long long total);

/// Upper-confidence pick: argmax_a [q(a) + sqrt(ln t / counts(a))], natural
/// log, t >= 1. Unvisited actions (counts(a) <= 0) score +inf. Ties break
/// to the lowest index.
int ucb_select(std::span<const double> q, std::span<const double> counts,
               long long t);

/// LLL realization of `rule` over Q at state `s`, with generalized counters
/// from E as the visit measure.
ActionId lll_action(const StochasticRule& rule, const ValueTable& q,
                    const ExplorationTable& e, StateId s);

/// Same with plain visit counts as the measure.
ActionId lll_action(const StochasticRule& rule, const ValueTable& q,
                    const VisitCounter& c, StateId s);

ActionId ucb_action(const ValueTable& q, const ExplorationTable& e, StateId s,
                    long long t);
ActionId ucb_action(const ValueTable& q, const VisitCounter& c, StateId s,
                    long long t);

enum class BonusForm {
  kInverseGc,          // r + beta / gc
  kInverseSqrtNegLog,  // r + beta / sqrt(gc * -ln(1 - alpha)) = beta / sqrt(-ln E)
};

struct RewardBonus {
  BonusForm form = BonusForm::kInverseGc;
  double beta = 1.0;
};

double default_beta(BonusForm form);

/// Exploration-augmented reward. `gc_post` must be the generalized counter
/// AFTER the E-value update for the pair just visited, which makes it
/// strictly positive; throws std::logic_error otherwise. `alpha` is the
/// learning rate defining the counter's log base.
double reward_bonus(const RewardBonus& bonus, double r, double gc_post,
                    double alpha);

}  // namespace evalues
