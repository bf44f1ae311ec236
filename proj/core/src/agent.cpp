#include "evalues/agent.hpp"

#include <stdexcept>

namespace evalues {

const std::vector<std::string>& agent_kind_names() {
  static const std::vector<std::string> names = {
      "egreedy",          "softmax",
      "egreedy-lll-counter", "egreedy-lll-evalue",
      "softmax-lll-counter", "softmax-lll-evalue",
      "ucb-counter",      "ucb-evalue",
      "egreedy-bonus",    "delayedq",
  };
  return names;
}

AgentKindInfo parse_agent_kind(const std::string& kind) {
  AgentKindInfo info;
  if (kind == "egreedy") {
    info.mode = SelectMode::kStochastic;
    info.rule = RuleKind::kEpsilonGreedy;
  } else if (kind == "softmax") {
    info.mode = SelectMode::kStochastic;
    info.rule = RuleKind::kSoftmax;
  } else if (kind == "egreedy-lll-counter") {
    info.mode = SelectMode::kLllCounter;
    info.rule = RuleKind::kEpsilonGreedy;
  } else if (kind == "egreedy-lll-evalue") {
    info.mode = SelectMode::kLllEvalue;
    info.rule = RuleKind::kEpsilonGreedy;
  } else if (kind == "softmax-lll-counter") {
    info.mode = SelectMode::kLllCounter;
    info.rule = RuleKind::kSoftmax;
  } else if (kind == "softmax-lll-evalue") {
    info.mode = SelectMode::kLllEvalue;
    info.rule = RuleKind::kSoftmax;
  } else if (kind == "ucb-counter") {
    info.mode = SelectMode::kUcbCounter;
  } else if (kind == "ucb-evalue") {
    info.mode = SelectMode::kUcbEvalue;
  } else if (kind == "egreedy-bonus") {
    info.mode = SelectMode::kStochastic;
    info.rule = RuleKind::kEpsilonGreedy;
    info.has_bonus = true;
  } else if (kind == "delayedq") {
    info.mode = SelectMode::kGreedyDelayed;
    info.is_delayed = true;
  } else {
    std::string msg = "unknown agent kind '" + kind + "'; valid kinds are:";
    for (const auto& name : agent_kind_names()) msg += " " + name;
    throw std::invalid_argument(msg);
  }
  return info;
}

TabularAgent::TabularAgent(const TabularMdp& mdp, const AgentSpec& spec)
    : mdp_(&mdp),
      spec_(spec),
      info_(parse_agent_kind(spec.kind)),
      q_(mdp, 0.0),
      e_(mdp, spec.alpha_e, spec.gamma_e),
      c_(mdp) {
  spec_.rule.kind = info_.rule;
  if (info_.has_bonus && !spec_.bonus) {
    spec_.bonus = RewardBonus{BonusForm::kInverseGc,
                              default_beta(BonusForm::kInverseGc)};
  }
  if (info_.is_delayed) {
    dq_.emplace(mdp, spec_.gamma, spec_.delayed_m, spec_.delayed_epsilon1);
  }
}

ActionId TabularAgent::select(StateId s, SeededRng& rng) const {
  switch (info_.mode) {
    case SelectMode::kStochastic:
      return sample_action(policy_distribution(spec_.rule, q_, s), rng);
    case SelectMode::kLllCounter:
      return lll_action(spec_.rule, q_, c_, s);
    case SelectMode::kLllEvalue:
      return lll_action(spec_.rule, q_, e_, s);
    case SelectMode::kUcbCounter:
      return ucb_action(q_, c_, s, steps_ + 1);
    case SelectMode::kUcbEvalue:
      return ucb_action(q_, e_, s, steps_ + 1);
    case SelectMode::kGreedyDelayed:
      return greedy_action(dq_->q(), s);
  }
  throw std::logic_error("unknown selection mode");
}

EpisodeResult TabularAgent::run_episode(SeededRng& rng, int max_steps) {
  EpisodeResult res;
  StateId s = reset(*mdp_);
  if (mdp_->is_terminal(s)) {
    res.reached_terminal = true;
    return res;
  }
  ActionId a = select(s, rng);
  for (int i = 0; i < max_steps; ++i) {
    Transition tr = step(*mdp_, s, a, rng);
    ActionId a_next{0};
    if (!tr.done) a_next = select(tr.s_next, rng);
    e_update(e_, tr.s, tr.a, tr.s_next, a_next, tr.done);
    c_.increment(tr.s, tr.a);
    if (dq_) {
      dq_->step(tr);
    } else {
      Transition learn_tr = tr;
      if (info_.has_bonus) {
        double gc_post = generalized_counter(e_, tr.s, tr.a);
        learn_tr.r = reward_bonus(*spec_.bonus, tr.r, gc_post, e_.alpha_e());
      }
      q_update(q_, learn_tr, spec_.alpha, spec_.gamma);
    }
    ++steps_;
    res.undiscounted_return += tr.r;
    ++res.steps;
    if (tr.done) {
      res.reached_terminal = true;
      break;
    }
    s = tr.s_next;
    a = a_next;
  }
  return res;
}

EpisodeTrace lll_episode(const TabularMdp& mdp, const StochasticRule& rule,
                          ValueTable& q, ExplorationTable& e, double alpha,
                          double gamma, SeededRng& rng, int max_steps) {
  EpisodeTrace trace;
  StateId s = reset(mdp);
  ActionId a = lll_action(rule, q, e, s);
  for (int i = 0; i < max_steps; ++i) {
    Transition tr = step(mdp, s, a, rng);
    ActionId a_next{0};
    if (!tr.done) a_next = lll_action(rule, q, e, tr.s_next);
    e_update(e, tr.s, tr.a, tr.s_next, a_next, tr.done);
    q_update(q, tr, alpha, gamma);
    trace.transitions.push_back(tr);
    trace.undiscounted_return += tr.r;
    if (tr.done) {
      trace.reached_terminal = true;
      break;
    }
    s = tr.s_next;
    a = a_next;
  }
  return trace;
}

}  // namespace evalues
