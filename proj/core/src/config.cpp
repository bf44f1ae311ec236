#include "evalues/config.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "evalues/environments.hpp"
#include "evalues/fa_agent.hpp"
#include "evalues/selection.hpp"

namespace evalues {
namespace {

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "env",     "k",        "normalized", "height",        "width",
      "agent",   "alpha",    "gamma",      "alpha_e",       "gamma_e",
      "epsilon", "tau",      "bonus_form", "beta",          "m",
      "epsilon1", "episodes", "trials",    "seed",          "eval_every",
      "snapshot_every", "max_steps", "record_pairs", "dump_tables",
  };
  return keys;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::invalid_argument("config" +
                              (where.empty() ? "" : " [" + where + "]") + ": " +
                              what);
}

double parse_real(const std::string& where, const std::string& key,
                  const std::string& value) {
  try {
    std::size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    fail(where, "key '" + key + "' needs a number, got '" + value + "'");
  }
}

long long parse_int(const std::string& where, const std::string& key,
                    const std::string& value) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    fail(where, "key '" + key + "' needs an integer, got '" + value + "'");
  }
}

bool parse_bool(const std::string& where, const std::string& key,
                const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  fail(where, "key '" + key + "' needs a boolean, got '" + value + "'");
}

void apply_key(ExperimentConfig& cfg, const std::string& key,
               const std::string& value) {
  const std::string& w = cfg.name;
  if (key == "env") cfg.env = value;
  else if (key == "k") cfg.k = static_cast<int>(parse_int(w, key, value));
  else if (key == "normalized") cfg.normalized = parse_bool(w, key, value);
  else if (key == "height") cfg.height = static_cast<int>(parse_int(w, key, value));
  else if (key == "width") cfg.width = static_cast<int>(parse_int(w, key, value));
  else if (key == "agent") cfg.agent = value;
  else if (key == "alpha") cfg.alpha = parse_real(w, key, value);
  else if (key == "gamma") cfg.gamma = parse_real(w, key, value);
  else if (key == "alpha_e") cfg.alpha_e = parse_real(w, key, value);
  else if (key == "gamma_e") cfg.gamma_e = parse_real(w, key, value);
  else if (key == "epsilon") cfg.epsilon = parse_real(w, key, value);
  else if (key == "tau") cfg.tau = parse_real(w, key, value);
  else if (key == "bonus_form") cfg.bonus_form = value;
  else if (key == "beta") cfg.beta = parse_real(w, key, value);
  else if (key == "m") cfg.m = static_cast<int>(parse_int(w, key, value));
  else if (key == "epsilon1") cfg.epsilon1 = parse_real(w, key, value);
  else if (key == "episodes") cfg.episodes = static_cast<int>(parse_int(w, key, value));
  else if (key == "trials") cfg.trials = static_cast<int>(parse_int(w, key, value));
  else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(w, key, value));
  else if (key == "eval_every") cfg.eval_every = static_cast<int>(parse_int(w, key, value));
  else if (key == "snapshot_every") cfg.snapshot_every = static_cast<int>(parse_int(w, key, value));
  else if (key == "max_steps") cfg.max_steps = static_cast<int>(parse_int(w, key, value));
  else if (key == "record_pairs") cfg.record_pairs = parse_bool(w, key, value);
  else if (key == "dump_tables") cfg.dump_tables = parse_bool(w, key, value);
  else {
    std::string msg = "unknown key '" + key + "'; valid keys are:";
    for (const auto& k : config_keys()) msg += " " + k;
    fail(w, msg);
  }
}

}  // namespace

const std::vector<std::string>& environment_names() {
  static const std::vector<std::string> names = {"bridge", "tree", "cliff",
                                                 "mountaincar"};
  return names;
}

bool is_tabular_env(const std::string& env) { return env != "mountaincar"; }

int resolved_episodes(const ExperimentConfig& cfg) {
  if (cfg.episodes) return *cfg.episodes;
  if (cfg.env == "bridge" && cfg.k >= 10) return 4000;
  return 1000;
}

double resolved_gamma(const ExperimentConfig& cfg) {
  if (cfg.gamma) return *cfg.gamma;
  if (cfg.env == "cliff" || cfg.env == "mountaincar") return 0.99;
  return 0.9;
}

double resolved_alpha_e(const ExperimentConfig& cfg) {
  return cfg.alpha_e ? *cfg.alpha_e : cfg.alpha;
}

AgentSpec agent_spec_from(const ExperimentConfig& cfg) {
  AgentSpec spec;
  spec.kind = cfg.agent;
  spec.rule.epsilon = cfg.epsilon;
  spec.rule.tau = cfg.tau;
  spec.alpha = cfg.alpha;
  spec.gamma = resolved_gamma(cfg);
  spec.alpha_e = resolved_alpha_e(cfg);
  spec.gamma_e = cfg.gamma_e;
  spec.delayed_m = cfg.m;
  spec.delayed_epsilon1 = cfg.epsilon1;

  AgentKindInfo info = parse_agent_kind(cfg.agent);
  if (info.has_bonus || cfg.bonus_form || cfg.beta) {
    BonusForm form = cfg.env == "mountaincar" ? BonusForm::kInverseSqrtNegLog
                                              : BonusForm::kInverseGc;
    if (cfg.bonus_form) {
      if (*cfg.bonus_form == "inverse_gc") {
        form = BonusForm::kInverseGc;
      } else if (*cfg.bonus_form == "inverse_sqrt_neglog") {
        form = BonusForm::kInverseSqrtNegLog;
      } else {
        fail(cfg.name, "bonus_form must be inverse_gc or inverse_sqrt_neglog, "
                       "got '" + *cfg.bonus_form + "'");
      }
    }
    spec.bonus = RewardBonus{form, cfg.beta ? *cfg.beta : default_beta(form)};
  }
  return spec;
}

TabularMdp make_tabular_env(const ExperimentConfig& cfg) {
  double gamma = resolved_gamma(cfg);
  if (cfg.env == "bridge") return make_bridge(cfg.k, cfg.normalized, gamma);
  if (cfg.env == "tree") return make_tree(cfg.k, gamma);
  if (cfg.env == "cliff") return make_cliff(cfg.height, cfg.width, gamma);
  fail(cfg.name, "environment '" + cfg.env + "' is not tabular");
}

void validate_config(const ExperimentConfig& cfg) {
  const auto& envs = environment_names();
  if (std::find(envs.begin(), envs.end(), cfg.env) == envs.end()) {
    std::string msg = "unknown environment '" + cfg.env + "'; valid names are:";
    for (const auto& e : envs) msg += " " + e;
    fail(cfg.name, msg);
  }
  parse_agent_kind(cfg.agent);  // throws listing valid kinds
  if (cfg.env == "mountaincar" && !fa_supports_kind(cfg.agent)) {
    std::string msg = "agent '" + cfg.agent +
                      "' is tabular-only; mountaincar supports:";
    for (const auto& name : agent_kind_names()) {
      if (fa_supports_kind(name)) msg += " " + name;
    }
    fail(cfg.name, msg);
  }
  if (cfg.trials < 1) fail(cfg.name, "trials must be >= 1");
  if (resolved_episodes(cfg) < 1) fail(cfg.name, "episodes must be >= 1");
  if (cfg.eval_every < 1) fail(cfg.name, "eval_every must be >= 1");
  if (cfg.snapshot_every < 0) fail(cfg.name, "snapshot_every must be >= 0");
  if (cfg.max_steps < 1) fail(cfg.name, "max_steps must be >= 1");
  agent_spec_from(cfg);  // validates bonus_form
}

std::vector<ExperimentConfig> parse_config(std::istream& is) {
  std::vector<ExperimentConfig> configs;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        fail("", "line " + std::to_string(lineno) + ": unterminated section");
      }
      std::string name = trim(line.substr(1, line.size() - 2));
      if (name.empty()) {
        fail("", "line " + std::to_string(lineno) + ": empty section name");
      }
      for (const auto& c : configs) {
        if (c.name == name) fail(name, "duplicate section name");
      }
      ExperimentConfig cfg;
      cfg.name = name;
      configs.push_back(cfg);
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      fail("", "line " + std::to_string(lineno) +
               ": expected 'key = value', got '" + line + "'");
    }
    if (configs.empty()) {
      fail("", "line " + std::to_string(lineno) +
               ": key before any [section] header");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      fail(configs.back().name,
           "line " + std::to_string(lineno) + ": empty key or value");
    }
    apply_key(configs.back(), key, value);
  }
  if (configs.empty()) fail("", "no [section] found");
  for (const auto& cfg : configs) validate_config(cfg);
  return configs;
}

std::vector<ExperimentConfig> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open config file: " + path);
  }
  return parse_config(in);
}

}  // namespace evalues
