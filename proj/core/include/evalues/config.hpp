#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "evalues/agent.hpp"
#include "evalues/mdp.hpp"

namespace evalues {

/// One experiment: an environment, an agent, and run bookkeeping. Parsed
/// from one `[section]` of a config file; unset optionals fall back to
/// documented per-environment defaults at resolution time.
struct ExperimentConfig {
  std::string name;

  std::string env = "bridge";
  int k = 5;                // bridge length / tree branching
  bool normalized = false;  // bridge rewards scaled into [0, 1]
  int height = 4;           // cliff grid
  int width = 12;

  std::string agent = "egreedy";
  double alpha = 0.1;
  std::optional<double> gamma;    // default: the environment's discount
  std::optional<double> alpha_e;  // default: alpha
  double gamma_e = 0.9;
  double epsilon = 0.1;
  double tau = 0.25;
  std::optional<std::string> bonus_form;  // inverse_gc | inverse_sqrt_neglog
  std::optional<double> beta;             // default: the form's beta
  int m = 10;
  double epsilon1 = 0.01;

  std::optional<int> episodes;  // default: 4000 for bridge k >= 10, else 1000
  int trials = 50;
  std::uint64_t seed = 1;
  int eval_every = 1;
  int snapshot_every = 0;  // 0 = no snapshots
  int max_steps = 10000;   // per-episode cap for tabular environments
  bool record_pairs = false;  // per-pair counter/error traces from trial 0
  bool dump_tables = false;   // final table snapshot from trial 0
};

const std::vector<std::string>& environment_names();
bool is_tabular_env(const std::string& env);

int resolved_episodes(const ExperimentConfig& cfg);
double resolved_gamma(const ExperimentConfig& cfg);
double resolved_alpha_e(const ExperimentConfig& cfg);

/// The agent described by the config, with every optional resolved.
AgentSpec agent_spec_from(const ExperimentConfig& cfg);

/// Builds the tabular environment (with the resolved discount). Throws
/// std::invalid_argument for "mountaincar".
TabularMdp make_tabular_env(const ExperimentConfig& cfg);

/// Cross-field checks beyond parsing: known env and agent names, agent
/// supported on the environment, positive counts. Throws
/// std::invalid_argument with the offending section name.
void validate_config(const ExperimentConfig& cfg);

/// Parses `[section]` + `key = value` lines; `#` starts a comment, blank
/// lines are skipped. Throws std::invalid_argument on unknown keys or
/// sections, malformed lines, and duplicate section names; every parsed
/// section is validated.
std::vector<ExperimentConfig> parse_config(std::istream& is);
std::vector<ExperimentConfig> parse_config_file(const std::string& path);

}  // namespace evalues
