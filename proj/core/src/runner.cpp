#include "evalues/runner.hpp"

#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "evalues/csv.hpp"
#include "evalues/environments.hpp"
#include "evalues/fa_agent.hpp"
#include "evalues/linear_heads.hpp"
#include "evalues/tables.hpp"

namespace evalues {
namespace {

bool is_eval_episode(const ExperimentConfig& cfg, int episode, int episodes) {
  return (episode + 1) % cfg.eval_every == 0 || episode == episodes - 1;
}

/// Trial worker for tabular environments. `side` is non-null only for
/// trial 0 and collects the optional extra outputs.
TrialSeries run_tabular_trial(const ExperimentConfig& cfg,
                              const TabularMdp& mdp, const OptimalSolution& sol,
                              int trial_index, ExperimentData* side) {
  TrialSeries series;
  series.seed = cfg.seed + static_cast<std::uint64_t>(trial_index);
  SeededRng rng(series.seed);
  TabularAgent agent(mdp, agent_spec_from(cfg));
  int episodes = resolved_episodes(cfg);
  for (int ep = 0; ep < episodes; ++ep) {
    EpisodeResult res = agent.run_episode(rng, cfg.max_steps);
    if (is_eval_episode(cfg, ep, episodes)) {
      EpisodeMetricsRow row;
      row.trial = series.seed;
      row.episode = ep;
      row.metric = mse(agent.q_view(), sol);
      row.steps = res.steps;
      series.rows.push_back(row);
    }
    if (side && cfg.record_pairs) {
      append_convergence_rows(side->pair_rows, mdp, sol, agent.q_view(),
                              agent.e(), agent.counts(), ep);
    }
  }
  if (side && cfg.dump_tables) {
    std::ostringstream ss;
    write_table_snapshot(ss, mdp, agent.q_view(), agent.e(), agent.counts());
    side->table_snapshot = ss.str();
  }
  return series;
}

void snapshot_weights(ExperimentData& side, const MountainCarAgent& agent,
                      int episode) {
  const auto& qw = agent.q_head().weights;
  for (std::size_t i = 0; i < qw.size(); ++i) {
    side.weight_rows.push_back(
        {episode, 'q', static_cast<int>(i), qw[i]});
  }
  const auto& ew = agent.e_head().weights;
  for (std::size_t i = 0; i < ew.size(); ++i) {
    side.weight_rows.push_back(
        {episode, 'e', static_cast<int>(i), ew[i]});
  }
}

TrialSeries run_mountaincar_trial(const ExperimentConfig& cfg, int trial_index,
                                  ExperimentData* side) {
  TrialSeries series;
  series.seed = cfg.seed + static_cast<std::uint64_t>(trial_index);
  SeededRng rng(series.seed);
  MountainCarEnv env;
  MountainCarAgent agent(env, agent_spec_from(cfg), rng);

  const double lo_x = MountainCarEnv::kMinPosition;
  const double hi_x = MountainCarEnv::kMaxPosition;
  const double lo_y = -MountainCarEnv::kMaxSpeed;
  const double hi_y = MountainCarEnv::kMaxSpeed;

  bool track = side && cfg.snapshot_every > 0;
  VisitHistogram hist;
  std::vector<std::vector<double>> visit_series;
  std::vector<std::vector<double>> ce_series;
  if (track) {
    agent.set_record_states(true);
    hist.bins_x = kCorrelationBins;
    hist.bins_y = kCorrelationBins;
    hist.counts.assign(
        static_cast<std::size_t>(kCorrelationBins) * kCorrelationBins, 0);
    visit_series.resize(hist.counts.size());
    ce_series.resize(hist.counts.size());
  }

  int episodes = resolved_episodes(cfg);
  for (int ep = 0; ep < episodes; ++ep) {
    EpisodeResult res;
    try {
      res = agent.run_episode(rng);
    } catch (const DivergenceError& err) {
      std::cerr << "[" << cfg.name << "] trial seed " << series.seed
                << " diverged at episode " << ep << ": " << err.what() << "\n";
      series.diverged = true;
      break;
    }
    if (is_eval_episode(cfg, ep, episodes)) {
      EpisodeMetricsRow row;
      row.trial = series.seed;
      row.episode = ep;
      row.metric = res.reached_terminal ? 1.0 : 0.0;
      row.steps = res.steps;
      series.rows.push_back(row);
    }
    if (track) {
      auto states = agent.take_recorded_states();
      accumulate_histogram(hist, states, lo_x, hi_x, lo_y, hi_y);
      if ((ep + 1) % cfg.snapshot_every == 0) {
        auto ce = ce_map(agent.e_head(), agent.coder(), kCorrelationBins,
                         kCorrelationBins, resolved_alpha_e(cfg), lo_x, hi_x,
                         lo_y, hi_y);
        for (std::size_t b = 0; b < hist.counts.size(); ++b) {
          visit_series[b].push_back(static_cast<double>(hist.counts[b]));
          ce_series[b].push_back(ce[b]);
        }
        snapshot_weights(*side, agent, ep);
      }
    }
  }

  if (track && !visit_series.empty() && visit_series[0].size() >= 2) {
    for (std::size_t b = 0; b < visit_series.size(); ++b) {
      if (hist.counts[b] == 0) continue;  // never visited: no signal
      auto r = pearson_correlation(visit_series[b], ce_series[b]);
      if (r) side->correlations.push_back({static_cast<int>(b), *r});
    }
  }
  return series;
}

TrialSeries run_one_trial(const ExperimentConfig& cfg, const TabularMdp* mdp,
                          const OptimalSolution* sol, int trial_index,
                          ExperimentData* side) {
  if (mdp) return run_tabular_trial(cfg, *mdp, *sol, trial_index, side);
  return run_mountaincar_trial(cfg, trial_index, side);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write file: " + path.string());
  }
  out << text;
}

}  // namespace

ExperimentData run_experiment_data(const ExperimentConfig& cfg, int workers) {
  validate_config(cfg);
  ExperimentData data;
  data.cfg = cfg;
  data.trials.resize(static_cast<std::size_t>(cfg.trials));

  const bool tabular = is_tabular_env(cfg.env);
  TabularMdp mdp = tabular ? make_tabular_env(cfg) : TabularMdp(1, 1, 0.0);
  OptimalSolution sol;
  if (tabular) {
    sol = value_iteration(mdp);
    if (cfg.record_pairs) data.excluded_pairs = zero_qstar_pairs(mdp, sol);
  }
  const TabularMdp* mdp_ptr = tabular ? &mdp : nullptr;
  const OptimalSolution* sol_ptr = tabular ? &sol : nullptr;

  int n = std::max(1, std::min(workers, cfg.trials));
  if (n == 1) {
    for (int i = 0; i < cfg.trials; ++i) {
      data.trials[static_cast<std::size_t>(i)] =
          run_one_trial(cfg, mdp_ptr, sol_ptr, i, i == 0 ? &data : nullptr);
    }
    return data;
  }

  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(cfg.trials));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n));
  for (int w = 0; w < n; ++w) {
    pool.emplace_back([&] {
      while (true) {
        int i = next.fetch_add(1);
        if (i >= cfg.trials) return;
        try {
          data.trials[static_cast<std::size_t>(i)] = run_one_trial(
              cfg, mdp_ptr, sol_ptr, i, i == 0 ? &data : nullptr);
        } catch (...) {
          errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
  return data;
}

std::vector<std::pair<int, double>> mean_metric_series(
    const ExperimentData& data) {
  std::map<int, std::pair<double, int>> acc;
  for (const auto& series : data.trials) {
    for (const auto& row : series.rows) {
      auto& slot = acc[row.episode];
      slot.first += row.metric;
      slot.second += 1;
    }
  }
  std::vector<std::pair<int, double>> out;
  out.reserve(acc.size());
  for (const auto& [episode, slot] : acc) {
    out.emplace_back(episode, slot.first / slot.second);
  }
  return out;
}

void write_raw_csv(std::ostream& os, const ExperimentData& data) {
  os << "trial,episode,metric,steps\n";
  for (const auto& series : data.trials) {
    for (const auto& row : series.rows) {
      os << row.trial << ',' << row.episode << ',' << format_double(row.metric)
         << ',' << row.steps << '\n';
    }
  }
}

void write_aggregated_csv(std::ostream& os,
                          std::span<const ExperimentData> experiments) {
  os << "episode,agent,mean_metric\n";
  for (const auto& data : experiments) {
    for (const auto& [episode, mean] : mean_metric_series(data)) {
      os << episode << ',' << data.cfg.name << ',' << format_double(mean)
         << '\n';
    }
  }
}

void write_fig6_csv(std::ostream& os, const ExperimentData& data) {
  os << "pair,episode,c,gc,rel_err\n";
  for (const auto& row : data.pair_rows) {
    os << row.pair << ',' << row.episode << ',' << row.c << ','
       << format_double(row.gc) << ',' << format_double(row.rel_err) << '\n';
  }
}

void write_correlations_csv(std::ostream& os, const ExperimentData& data) {
  os << "state_bin,coefficient\n";
  for (const auto& row : data.correlations) {
    os << row.state_bin << ',' << format_double(row.coefficient) << '\n';
  }
}

void write_weights_csv(std::ostream& os, const ExperimentData& data) {
  os << "episode,head,index,weight\n";
  for (const auto& row : data.weight_rows) {
    os << row.episode << ',' << row.head << ',' << row.index << ','
       << format_double(row.weight) << '\n';
  }
}

std::vector<std::string> run_experiment(const ExperimentConfig& cfg,
                                        const std::string& out_dir,
                                        int workers) {
  ExperimentData data = run_experiment_data(cfg, workers);
  std::filesystem::path dir = std::filesystem::path(out_dir) / cfg.name;
  std::filesystem::create_directories(dir);
  std::vector<std::string> written;

  auto emit = [&](const char* file, auto writer) {
    std::ostringstream ss;
    writer(ss);
    write_file(dir / file, ss.str());
    written.push_back((dir / file).string());
  };

  emit("raw.csv", [&](std::ostream& os) { write_raw_csv(os, data); });
  if (!data.pair_rows.empty()) {
    emit("fig6.csv", [&](std::ostream& os) { write_fig6_csv(os, data); });
  }
  if (!data.table_snapshot.empty()) {
    write_file(dir / "tables.csv", data.table_snapshot);
    written.push_back((dir / "tables.csv").string());
  }
  if (!data.correlations.empty()) {
    emit("correlations.csv",
         [&](std::ostream& os) { write_correlations_csv(os, data); });
  }
  if (!data.weight_rows.empty()) {
    emit("weights.csv", [&](std::ostream& os) { write_weights_csv(os, data); });
  }
  return written;
}

std::vector<std::string> sweep_experiments(
    std::span<const ExperimentConfig> configs, const std::string& out_dir,
    int workers) {
  if (configs.empty()) {
    throw std::invalid_argument("sweep needs at least one experiment section");
  }
  std::vector<std::string> written;
  std::vector<ExperimentData> done;
  for (const auto& cfg : configs) {
    try {
      ExperimentData data = run_experiment_data(cfg, workers);
      std::filesystem::path dir = std::filesystem::path(out_dir) / cfg.name;
      std::filesystem::create_directories(dir);
      std::ostringstream ss;
      write_raw_csv(ss, data);
      write_file(dir / "raw.csv", ss.str());
      written.push_back((dir / "raw.csv").string());
      if (!data.pair_rows.empty()) {
        std::ostringstream f6;
        write_fig6_csv(f6, data);
        write_file(dir / "fig6.csv", f6.str());
        written.push_back((dir / "fig6.csv").string());
      }
      done.push_back(std::move(data));
    } catch (const std::exception& err) {
      std::cerr << "[" << cfg.name << "] failed: " << err.what() << "\n";
    }
  }
  if (done.empty()) {
    throw std::runtime_error("every sweep section failed");
  }
  std::filesystem::create_directories(out_dir);
  std::ostringstream agg;
  write_aggregated_csv(agg, done);
  auto agg_path = std::filesystem::path(out_dir) / "aggregated.csv";
  write_file(agg_path, agg.str());
  written.push_back(agg_path.string());
  return written;
}

}  // namespace evalues
