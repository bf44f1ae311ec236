#include "evalues/fa_agent.hpp"

#include <limits>
#include <stdexcept>

namespace evalues {

bool fa_supports_kind(const std::string& kind) {
  return kind == "egreedy" || kind == "softmax" ||
         kind == "egreedy-lll-evalue" || kind == "softmax-lll-evalue" ||
         kind == "egreedy-bonus";
}

MountainCarAgent::MountainCarAgent(const MountainCarEnv& env,
                                   const AgentSpec& spec, SeededRng& rng)
    : env_(env),
      spec_(spec),
      info_(parse_agent_kind(spec.kind)),
      coder_(mountain_car_coder()),
      q_(coder_.total_features(), rng),
      e_(coder_.total_features()) {
  if (!fa_supports_kind(spec.kind)) {
    std::string msg = "agent kind '" + spec.kind +
                      "' needs tabular tables; continuous runs support:";
    for (const auto& name : agent_kind_names()) {
      if (fa_supports_kind(name)) msg += " " + name;
    }
    throw std::invalid_argument(msg);
  }
  spec_.rule.kind = info_.rule;
  if (info_.has_bonus && !spec_.bonus) {
    spec_.bonus = RewardBonus{BonusForm::kInverseSqrtNegLog,
                              default_beta(BonusForm::kInverseSqrtNegLog)};
  }
}

ActionId MountainCarAgent::select(ContinuousState s, SeededRng& rng) const {
  int n = coder_.num_actions();
  std::vector<double> qvals(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    qvals[a] = q_predict(q_, coder_.features(s, ActionId{a}));
  }
  if (info_.mode == SelectMode::kStochastic) {
    return sample_action(policy_distribution(spec_.rule, qvals), rng);
  }
  // LLL over generalized counters read off the logistic E head.
  auto f = policy_distribution(spec_.rule, qvals);
  std::vector<double> gc(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    double e = e_predict(e_, coder_.features(s, ActionId{a}));
    gc[a] = generalized_counter_value(e, spec_.alpha_e);
  }
  return ActionId{lll_select(f, gc)};
}

EpisodeResult MountainCarAgent::run_episode(SeededRng& rng) {
  EpisodeResult res;
  ContinuousState s = mountain_car_start(rng);
  ActionId a = select(s, rng);
  for (int t = 0; t < env_.step_cap; ++t) {
    if (record_) recorded_.push_back(s);
    ContinuousStep st = mountain_car_step(env_, s, a, t);
    ActionId a_next{0};
    if (!st.done) a_next = select(st.s, rng);

    SparseFeatures phi = coder_.features(s, a);
    SparseFeatures phi_next_realized =
        st.done ? phi : coder_.features(st.s, a_next);
    logistic_e_step(e_, phi, phi_next_realized, spec_.gamma_e, spec_.alpha_e,
                    st.done);

    double r_eff = st.reward;
    if (info_.has_bonus) {
      double gc_post =
          generalized_counter_value(e_predict(e_, phi), spec_.alpha_e);
      r_eff = reward_bonus(*spec_.bonus, st.reward, gc_post, spec_.alpha_e);
    }

    SparseFeatures phi_next_greedy = phi;
    if (!st.done) {
      int best = 0;
      double best_q = -std::numeric_limits<double>::infinity();
      for (int cand = 0; cand < coder_.num_actions(); ++cand) {
        double q = q_predict(q_, coder_.features(st.s, ActionId{cand}));
        if (q > best_q) {
          best_q = q;
          best = cand;
        }
      }
      phi_next_greedy = coder_.features(st.s, ActionId{best});
    }
    linear_q_step(q_, phi, r_eff, phi_next_greedy, spec_.gamma, spec_.alpha,
                  st.done);

    res.undiscounted_return += st.reward;
    ++res.steps;
    if (st.done) {
      res.reached_terminal = st.reward > 0.0;
      break;
    }
    s = st.s;
    a = a_next;
  }
  return res;
}

std::vector<ContinuousState> MountainCarAgent::take_recorded_states() {
  std::vector<ContinuousState> out;
  out.swap(recorded_);
  return out;
}

}  // namespace evalues
