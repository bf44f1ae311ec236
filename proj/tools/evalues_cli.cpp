#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "evalues/config.hpp"
#include "evalues/oracle.hpp"
#include "evalues/runner.hpp"
#include "evalues/svg_plot.hpp"

namespace {

/// Sections to operate on: all of them, or the one picked with --name.
std::vector<evalues::ExperimentConfig> select_sections(
    const std::vector<evalues::ExperimentConfig>& configs,
    const std::string& name) {
  if (name.empty()) return configs;
  for (const auto& cfg : configs) {
    if (cfg.name == name) return {cfg};
  }
  std::string msg = "no section named '" + name + "'; sections are:";
  for (const auto& cfg : configs) msg += " " + cfg.name;
  throw std::invalid_argument(msg);
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            int workers, const std::string& name) {
  auto configs = select_sections(evalues::parse_config_file(config_path), name);
  for (const auto& cfg : configs) {
    for (const auto& path : evalues::run_experiment(cfg, out_dir, workers)) {
      std::cout << "[" << cfg.name << "] wrote " << path << "\n";
    }
  }
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir,
              int workers) {
  auto configs = evalues::parse_config_file(config_path);
  for (const auto& path :
       evalues::sweep_experiments(configs, out_dir, workers)) {
    std::cout << "wrote " << path << "\n";
  }
  return 0;
}

int cmd_oracle(const std::string& config_path, const std::string& out_dir,
               const std::string& name) {
  auto configs = select_sections(evalues::parse_config_file(config_path), name);
  for (const auto& cfg : configs) {
    if (!evalues::is_tabular_env(cfg.env)) {
      throw std::invalid_argument("[" + cfg.name +
                                  "] oracle requires tabular environment");
    }
    evalues::TabularMdp mdp = evalues::make_tabular_env(cfg);
    evalues::OptimalSolution sol = evalues::value_iteration(mdp);
    if (sol.occupancy_truncated) {
      std::cerr << "[" << cfg.name
                << "] warning: optimal policy never absorbed within the "
                   "horizon; occupancy is truncated\n";
    }
    std::filesystem::path dir =
        std::filesystem::path(out_dir) / cfg.name;
    std::filesystem::create_directories(dir);
    std::ofstream out(dir / "oracle.csv", std::ios::binary);
    if (!out) {
      throw std::runtime_error("cannot write " + (dir / "oracle.csv").string());
    }
    evalues::write_oracle_csv(out, mdp, sol);
    std::cout << "[" << cfg.name << "] wrote " << (dir / "oracle.csv").string()
              << "\n";
  }
  return 0;
}

int cmd_plot(const std::string& kind_name,
             const std::vector<std::string>& csv_paths,
             const std::string& out_path, bool log_abscissa) {
  evalues::PlotOptions opts;
  opts.log_abscissa = log_abscissa;
  evalues::plot_files(evalues::parse_plot_kind(kind_name), csv_paths, out_path,
                      opts);
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exploration-value toolkit: seeded experiment runs, ground-truth "
      "oracles, and SVG plots for tabular and tile-coded agents"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::string name;
  int workers = 1;

  auto* run = app.add_subcommand("run", "Run experiment sections to raw CSVs");
  run->add_option("--config", config_path, "Experiment config file")
      ->required();
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--workers", workers, "Concurrent trial workers");
  run->add_option("--name", name, "Only this section");

  auto* sweep = app.add_subcommand(
      "sweep", "Run all sections and aggregate mean curves");
  sweep->add_option("--config", config_path, "Experiment config file")
      ->required();
  sweep->add_option("--out", out_dir, "Output directory");
  sweep->add_option("--workers", workers, "Concurrent trial workers");

  auto* oracle = app.add_subcommand(
      "oracle", "Write ground-truth value/occupancy tables");
  oracle->add_option("--config", config_path, "Experiment config file")
      ->required();
  oracle->add_option("--out", out_dir, "Output directory");
  oracle->add_option("--name", name, "Only this section");

  std::string plot_kind;
  std::string plot_out;
  std::vector<std::string> plot_inputs;
  bool log_abscissa = false;
  auto* plot = app.add_subcommand("plot", "Render CSV outputs to a static SVG");
  plot->add_option("--kind", plot_kind, "curves, fig6, or histogram")
      ->required();
  plot->add_option("--out", plot_out, "Output SVG path")->required();
  plot->add_flag("--log-abscissa", log_abscissa,
                 "Curves: log10(1 + episode) on the x axis");
  plot->add_option("csv", plot_inputs, "Input CSV files")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, out_dir, workers, name);
    if (sweep->parsed()) return cmd_sweep(config_path, out_dir, workers);
    if (oracle->parsed()) return cmd_oracle(config_path, out_dir, name);
    if (plot->parsed()) {
      return cmd_plot(plot_kind, plot_inputs, plot_out, log_abscissa);
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 0;
}
