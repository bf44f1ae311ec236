#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "evalues/analysis.hpp"
#include "evalues/config.hpp"
#include "evalues/oracle.hpp"

namespace evalues {

/// One evaluated episode of one trial. `trial` is the trial's seed
/// (base seed + trial index), `episode` the 0-based index of the episode
/// just finished, `metric` the occupancy-weighted MSE against the oracle
/// (tabular) or goal success 0/1 (mountaincar), `steps` the episode length.
struct EpisodeMetricsRow {
  std::uint64_t trial = 0;
  int episode = 0;
  double metric = 0.0;
  int steps = 0;
};

/// All evaluated episodes of one trial, in episode order. A diverged trial
/// keeps the rows recorded before the abort.
struct TrialSeries {
  std::uint64_t seed = 0;
  std::vector<EpisodeMetricsRow> rows;
  bool diverged = false;
};

struct CorrelationRow {
  int state_bin = 0;
  double coefficient = 0.0;
};

struct WeightSnapshotRow {
  int episode = 0;
  char head = 'q';  // 'q' or 'e'
  int index = 0;
  double weight = 0.0;
};

/// Everything one experiment produced. Side outputs (pair traces, table
/// snapshot, correlations, weight snapshots) come from trial 0 only, so
/// results do not depend on worker scheduling.
struct ExperimentData {
  ExperimentConfig cfg;
  std::vector<TrialSeries> trials;       // indexed by trial, canonical order
  std::vector<PairTraceRow> pair_rows;   // cfg.record_pairs
  std::vector<int> excluded_pairs;       // q* = 0 pairs absent from pair_rows
  std::string table_snapshot;            // cfg.dump_tables
  std::vector<CorrelationRow> correlations;      // mountaincar snapshots
  std::vector<WeightSnapshotRow> weight_rows;    // mountaincar snapshots
};

/// Number of (position, velocity) bins per axis for the mountaincar
/// visit-histogram / correlation analysis.
inline constexpr int kCorrelationBins = 20;

/// Runs all trials of one experiment. Trials are independent: with
/// `workers` > 1 they execute on a thread pool, and the output is
/// byte-identical to a single-worker run. Throws config errors eagerly;
/// a DivergenceError inside a trial marks that trial and continues.
ExperimentData run_experiment_data(const ExperimentConfig& cfg, int workers);

/// Mean metric per episode over the trials that evaluated that episode,
/// as (episode, mean) sorted by episode.
std::vector<std::pair<int, double>> mean_metric_series(
    const ExperimentData& data);

void write_raw_csv(std::ostream& os, const ExperimentData& data);
void write_aggregated_csv(std::ostream& os,
                          std::span<const ExperimentData> experiments);
void write_fig6_csv(std::ostream& os, const ExperimentData& data);
void write_correlations_csv(std::ostream& os, const ExperimentData& data);
void write_weights_csv(std::ostream& os, const ExperimentData& data);

/// Runs one experiment and writes its files under `out_dir`/`cfg.name`/:
/// raw.csv always, fig6.csv / tables.csv / correlations.csv / weights.csv
/// when the corresponding outputs exist. Returns the paths written.
std::vector<std::string> run_experiment(const ExperimentConfig& cfg,
                                        const std::string& out_dir,
                                        int workers);

/// Runs every experiment, then writes `out_dir`/aggregated.csv with the
/// per-episode mean metric of each section (agent column = section name).
/// A failing section is reported on stderr and skipped; throws only if
/// every section fails.
std::vector<std::string> sweep_experiments(
    std::span<const ExperimentConfig> configs, const std::string& out_dir,
    int workers);

}  // namespace evalues
