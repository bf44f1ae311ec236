#pragma once

#include <vector>

#include "evalues/agent.hpp"
#include "evalues/environments.hpp"
#include "evalues/linear_heads.hpp"
#include "evalues/tile_coding.hpp"

namespace evalues {

/// The agent kinds a continuous (tile-coded) run supports. Counter-, UCB-
/// and delayed-Q kinds need tabular visit counts and are rejected.
bool fa_supports_kind(const std::string& kind);

/// MountainCar learner: linear Q head and logistic E head over shared tile
/// features, stepped with the same per-transition ordering as the tabular
/// agent (select a' first, then the E step, bonus, Q step).
class MountainCarAgent {
 public:
  /// `rng` seeds the random Q-head initialization; pass the trial stream.
  MountainCarAgent(const MountainCarEnv& env, const AgentSpec& spec,
                   SeededRng& rng);

  /// One episode from a fresh start state; `reached_terminal` means the
  /// goal was reached (hitting the step cap does not count).
  EpisodeResult run_episode(SeededRng& rng);

  const TileCoder& coder() const { return coder_; }
  const LinearQHead& q_head() const { return q_; }
  const LogisticEHead& e_head() const { return e_; }
  const AgentSpec& spec() const { return spec_; }

  /// When enabled, every state the agent acts in is appended to an internal
  /// log, retrievable (and cleared) with take_recorded_states().
  void set_record_states(bool on) { record_ = on; }
  std::vector<ContinuousState> take_recorded_states();

 private:
  ActionId select(ContinuousState s, SeededRng& rng) const;

  MountainCarEnv env_;
  AgentSpec spec_;
  AgentKindInfo info_;
  TileCoder coder_;
  LinearQHead q_;
  LogisticEHead e_;
  bool record_ = false;
  std::vector<ContinuousState> recorded_;
};

}  // namespace evalues
