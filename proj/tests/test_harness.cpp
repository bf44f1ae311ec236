#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "evalues/config.hpp"
#include "evalues/csv.hpp"
#include "evalues/runner.hpp"
#include "evalues/svg_plot.hpp"

using namespace evalues;
namespace fs = std::filesystem;

namespace {

std::vector<ExperimentConfig> parse_text(const std::string& text) {
  std::istringstream is(text);
  return parse_config(is);
}

std::string raw_csv_text(const ExperimentData& data) {
  std::ostringstream os;
  write_raw_csv(os, data);
  return os.str();
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("config sections parse with documented defaults") {
  auto cfgs = parse_text(
      "# bridge sweep\n"
      "[short]\n"
      "env = bridge\n"
      "agent = egreedy\n"
      "\n"
      "[long]\n"
      "env = bridge\n"
      "k = 15\n"
      "agent = softmax-lll-evalue\n"
      "gamma_e = 0.99\n");
  REQUIRE(cfgs.size() == 2);

  const ExperimentConfig& a = cfgs[0];
  CHECK(a.name == "short");
  CHECK(a.k == 5);
  CHECK(a.alpha == 0.1);
  CHECK(a.trials == 50);
  CHECK(a.seed == 1);
  CHECK(a.eval_every == 1);
  CHECK(a.max_steps == 10000);
  CHECK(resolved_gamma(a) == 0.9);
  CHECK(resolved_episodes(a) == 1000);
  CHECK(resolved_alpha_e(a) == 0.1);

  const ExperimentConfig& b = cfgs[1];
  CHECK(b.k == 15);
  CHECK(b.gamma_e == 0.99);
  CHECK(resolved_episodes(b) == 4000);
}

TEST_CASE("environment defaults depend on the environment") {
  auto cfgs = parse_text(
      "[c]\nenv = cliff\nagent = egreedy\n"
      "[m]\nenv = mountaincar\nagent = egreedy\n");
  CHECK(resolved_gamma(cfgs[0]) == 0.99);
  CHECK(cfgs[0].height == 4);
  CHECK(cfgs[0].width == 12);
  CHECK(resolved_gamma(cfgs[1]) == 0.99);
  CHECK(is_tabular_env("cliff"));
  CHECK_FALSE(is_tabular_env("mountaincar"));
  CHECK_THROWS_AS(make_tabular_env(cfgs[1]), std::invalid_argument);
}

TEST_CASE("explicit keys override the resolution chain") {
  auto cfgs = parse_text(
      "[x]\nenv = bridge\nagent = egreedy\ngamma = 0.5\nalpha = 0.2\n"
      "alpha_e = 0.05\nepisodes = 77\n");
  CHECK(resolved_gamma(cfgs[0]) == 0.5);
  CHECK(resolved_alpha_e(cfgs[0]) == 0.05);
  CHECK(resolved_episodes(cfgs[0]) == 77);
  AgentSpec spec = agent_spec_from(cfgs[0]);
  CHECK(spec.alpha == 0.2);
  CHECK(spec.gamma == 0.5);
  CHECK(spec.alpha_e == 0.05);
}

TEST_CASE("bonus resolution follows the environment unless overridden") {
  auto cfgs = parse_text(
      "[b]\nenv = bridge\nagent = egreedy-bonus\n"
      "[m]\nenv = mountaincar\nagent = egreedy-bonus\n"
      "[o]\nenv = bridge\nagent = egreedy-bonus\n"
      "bonus_form = inverse_sqrt_neglog\nbeta = 0.2\n");
  AgentSpec b = agent_spec_from(cfgs[0]);
  REQUIRE(b.bonus.has_value());
  CHECK(b.bonus->form == BonusForm::kInverseGc);
  CHECK(b.bonus->beta == 1.0);

  AgentSpec m = agent_spec_from(cfgs[1]);
  REQUIRE(m.bonus.has_value());
  CHECK(m.bonus->form == BonusForm::kInverseSqrtNegLog);
  CHECK(m.bonus->beta == 0.05);

  AgentSpec o = agent_spec_from(cfgs[2]);
  REQUIRE(o.bonus.has_value());
  CHECK(o.bonus->form == BonusForm::kInverseSqrtNegLog);
  CHECK(o.bonus->beta == 0.2);

  // No bonus keys and a non-bonus kind leaves AgentSpec::bonus empty.
  auto plain = parse_text("[p]\nenv = bridge\nagent = egreedy\n");
  CHECK_FALSE(agent_spec_from(plain[0]).bonus.has_value());
}

TEST_CASE("config errors name the offence and the options") {
  CHECK_THROWS_AS(parse_text("[a]\nenv = bridge\nagent = egreedy\nfoo = 1\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_text("env = bridge\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_text("[a]\nenv = bridge\n[a]\nenv = tree\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_text("[a]\nenv = bridge\nagent = egreedy\nk\n"),
                  std::invalid_argument);

  try {
    parse_text("[a]\nenv = lake\nagent = egreedy\n");
    FAIL("expected a throw");
  } catch (const std::invalid_argument& ex) {
    std::string msg = ex.what();
    CHECK(msg.find("bridge") != std::string::npos);
    CHECK(msg.find("mountaincar") != std::string::npos);
  }
  try {
    parse_text("[a]\nenv = bridge\nagent = trpo\n");
    FAIL("expected a throw");
  } catch (const std::invalid_argument& ex) {
    std::string msg = ex.what();
    CHECK(msg.find("egreedy-lll-evalue") != std::string::npos);
  }
  // Counter-based agents have no continuous-state analogue.
  CHECK_THROWS_AS(parse_text("[a]\nenv = mountaincar\nagent = delayedq\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_text("[a]\nenv = bridge\nagent = egreedy\ntrials = 0\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      parse_text("[a]\nenv = bridge\nagent = egreedy-bonus\nbonus_form = x\n"),
      std::invalid_argument);
}

TEST_CASE("a ten episode run yields ten rows per trial") {
  ExperimentConfig cfg;
  cfg.name = "tiny";
  cfg.env = "bridge";
  cfg.k = 3;
  cfg.agent = "egreedy";
  cfg.episodes = 10;
  cfg.trials = 2;
  cfg.seed = 5;
  ExperimentData data = run_experiment_data(cfg, 1);

  REQUIRE(data.trials.size() == 2);
  CHECK(data.trials[0].seed == 5);
  CHECK(data.trials[1].seed == 6);
  for (const TrialSeries& t : data.trials) {
    REQUIRE(t.rows.size() == 10);
    for (int ep = 0; ep < 10; ++ep) {
      CHECK(t.rows[ep].episode == ep);
      CHECK(t.rows[ep].trial == t.seed);
      CHECK(t.rows[ep].steps >= 1);
      CHECK(t.rows[ep].metric >= 0.0);
    }
    CHECK_FALSE(t.diverged);
  }
  // Learning moves the error below its starting point.
  CHECK(data.trials[0].rows.back().metric < data.trials[0].rows.front().metric);
}

TEST_CASE("eval cadence keeps every nth episode plus the last") {
  ExperimentConfig cfg;
  cfg.name = "cadence";
  cfg.env = "bridge";
  cfg.k = 2;
  cfg.agent = "egreedy";
  cfg.episodes = 10;
  cfg.trials = 1;
  cfg.eval_every = 3;
  ExperimentData data = run_experiment_data(cfg, 1);
  std::vector<int> eps;
  for (const auto& row : data.trials[0].rows) eps.push_back(row.episode);
  CHECK(eps == std::vector<int>{2, 5, 8, 9});
}

TEST_CASE("the reward-free tree scores zero error throughout") {
  ExperimentConfig cfg;
  cfg.name = "zero";
  cfg.env = "tree";
  cfg.k = 3;
  cfg.agent = "softmax-lll-evalue";
  cfg.episodes = 10;
  cfg.trials = 2;
  ExperimentData data = run_experiment_data(cfg, 1);
  for (const TrialSeries& t : data.trials) {
    for (const auto& row : t.rows) CHECK(row.metric == 0.0);
  }
}

TEST_CASE("identical configs replay byte-identical csv") {
  ExperimentConfig cfg;
  cfg.name = "det";
  cfg.env = "bridge";
  cfg.k = 5;
  cfg.agent = "softmax-lll-evalue";
  cfg.episodes = 30;
  cfg.trials = 3;
  cfg.record_pairs = true;
  cfg.dump_tables = true;

  ExperimentData one = run_experiment_data(cfg, 1);
  ExperimentData two = run_experiment_data(cfg, 1);
  CHECK(raw_csv_text(one) == raw_csv_text(two));
  CHECK(one.table_snapshot == two.table_snapshot);

  ExperimentData parallel = run_experiment_data(cfg, 2);
  CHECK(raw_csv_text(one) == raw_csv_text(parallel));
  CHECK(one.table_snapshot == parallel.table_snapshot);
  std::ostringstream fa, fb;
  write_fig6_csv(fa, one);
  write_fig6_csv(fb, parallel);
  CHECK(fa.str() == fb.str());
}

TEST_CASE("aggregated means re-derive from the raw rows") {
  ExperimentConfig cfg;
  cfg.name = "agg";
  cfg.env = "bridge";
  cfg.k = 3;
  cfg.agent = "egreedy";
  cfg.episodes = 8;
  cfg.trials = 4;
  ExperimentData data = run_experiment_data(cfg, 1);

  std::map<int, std::pair<double, int>> sums;
  for (const TrialSeries& t : data.trials) {
    for (const auto& row : t.rows) {
      sums[row.episode].first += row.metric;
      sums[row.episode].second += 1;
    }
  }
  auto series = mean_metric_series(data);
  REQUIRE(series.size() == sums.size());
  for (const auto& [ep, mean] : series) {
    CHECK(mean ==
          doctest::Approx(sums[ep].first / sums[ep].second).epsilon(1e-12));
  }

  std::vector<ExperimentData> all;
  all.push_back(std::move(data));
  std::ostringstream os;
  write_aggregated_csv(os, all);
  std::istringstream is(os.str());
  CsvTable table = read_csv(is);
  REQUIRE(table.header ==
          std::vector<std::string>{"episode", "agent", "mean_metric"});
  CHECK(table.rows.size() == 8);
  for (const auto& row : table.rows) CHECK(row[1] == "agg");
}

TEST_CASE("experiment directories hold the promised files") {
  fs::path dir = fresh_dir("evalues_run_test");
  ExperimentConfig cfg;
  cfg.name = "files";
  cfg.env = "bridge";
  cfg.k = 3;
  cfg.agent = "egreedy-lll-evalue";
  cfg.episodes = 6;
  cfg.trials = 1;
  cfg.record_pairs = true;
  cfg.dump_tables = true;

  auto paths = run_experiment(cfg, dir.string(), 1);
  std::set<std::string> names;
  for (const auto& p : paths) names.insert(fs::path(p).filename().string());
  CHECK(names.count("raw.csv") == 1);
  CHECK(names.count("fig6.csv") == 1);
  CHECK(names.count("tables.csv") == 1);

  CsvTable raw = read_csv_file((dir / "files" / "raw.csv").string());
  CHECK(raw.header ==
        std::vector<std::string>{"trial", "episode", "metric", "steps"});
  CHECK(raw.rows.size() == 6);

  CsvTable fig6 = read_csv_file((dir / "files" / "fig6.csv").string());
  CHECK(fig6.header ==
        std::vector<std::string>{"pair", "episode", "c", "gc", "rel_err"});
  CHECK(fig6.rows.size() > 0);

  CsvTable tables = read_csv_file((dir / "files" / "tables.csv").string());
  CHECK(tables.header == std::vector<std::string>{"s", "a", "q", "e", "c"});
  fs::remove_all(dir);
}

TEST_CASE("sweeps aggregate every section into one file") {
  fs::path dir = fresh_dir("evalues_sweep_test");
  auto cfgs = parse_text(
      "[first]\nenv = tree\nk = 2\nagent = softmax\nepisodes = 4\ntrials = 2\n"
      "[second]\nenv = bridge\nk = 2\nagent = egreedy\nepisodes = 4\n"
      "trials = 2\n");
  auto paths = sweep_experiments(cfgs, dir.string(), 1);

  bool has_aggregated = false;
  for (const auto& p : paths) {
    if (fs::path(p).filename() == "aggregated.csv") has_aggregated = true;
  }
  CHECK(has_aggregated);

  CsvTable agg = read_csv_file((dir / "aggregated.csv").string());
  REQUIRE(agg.rows.size() == 8);
  // Section-major order, each section in episode order.
  for (int i = 0; i < 4; ++i) {
    CHECK(agg.rows[i][1] == "first");
    CHECK(agg.rows[i][0] == std::to_string(i));
    CHECK(agg.rows[4 + i][1] == "second");
  }
  fs::remove_all(dir);
}

TEST_CASE("mountaincar runs produce success metrics and snapshots") {
  ExperimentConfig cfg;
  cfg.name = "mc";
  cfg.env = "mountaincar";
  cfg.agent = "egreedy";
  cfg.episodes = 3;
  cfg.trials = 1;
  cfg.snapshot_every = 1;
  ExperimentData data = run_experiment_data(cfg, 1);
  REQUIRE(data.trials.size() == 1);
  REQUIRE(data.trials[0].rows.size() == 3);
  for (const auto& row : data.trials[0].rows) {
    CHECK((row.metric == 0.0 || row.metric == 1.0));
    CHECK(row.steps >= 1);
    CHECK(row.steps <= 1000);
  }
  CHECK(data.weight_rows.size() > 0);
  std::ostringstream os;
  write_weights_csv(os, data);
  std::istringstream is(os.str());
  CsvTable w = read_csv(is);
  CHECK(w.header ==
        std::vector<std::string>{"episode", "head", "index", "weight"});
}

TEST_CASE("curve plots draw one polyline per agent") {
  CsvTable agg;
  agg.header = {"episode", "agent", "mean_metric"};
  for (int ep = 0; ep < 5; ++ep) {
    agg.rows.push_back({std::to_string(ep), "alpha", format_double(1.0 / (ep + 1))});
    agg.rows.push_back({std::to_string(ep), "beta", format_double(2.0 / (ep + 2))});
  }
  std::vector<CsvTable> tables = {agg};
  std::string svg = render_plot(PlotKind::kCurves, tables, {});
  CHECK(svg.find("<svg") != std::string::npos);
  std::size_t polylines = 0;
  for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos;
       pos = svg.find("<polyline", pos + 1)) {
    ++polylines;
  }
  CHECK(polylines == 2);
  CHECK(svg.find(">alpha<") != std::string::npos);
  CHECK(svg.find(">beta<") != std::string::npos);

  std::string log_svg =
      render_plot(PlotKind::kCurves, tables, {.log_abscissa = true});
  CHECK(log_svg != svg);
}

TEST_CASE("scatter and histogram plots render their marks") {
  CsvTable fig6;
  fig6.header = {"pair", "episode", "c", "gc", "rel_err"};
  for (int i = 0; i < 10; ++i) {
    fig6.rows.push_back({"0", std::to_string(i), std::to_string(i + 1),
                         format_double(1.5 * (i + 1)),
                         format_double(1.0 / (i + 1))});
  }
  std::vector<CsvTable> tables = {fig6};
  std::string svg = render_plot(PlotKind::kFig6Scatter, tables, {});
  CHECK(svg.find("<circle") != std::string::npos);

  CsvTable corr;
  corr.header = {"state_bin", "coefficient"};
  for (int i = 0; i < 6; ++i) {
    corr.rows.push_back({std::to_string(i), format_double(0.2 * i - 0.3)});
  }
  std::vector<CsvTable> hist_tables = {corr};
  std::string hist = render_plot(PlotKind::kHistogram, hist_tables, {});
  CHECK(hist.find("<rect") != std::string::npos);
}

TEST_CASE("plot errors name the missing column and reject empty input") {
  CsvTable wrong;
  wrong.header = {"episode", "agent"};
  wrong.rows.push_back({"0", "a"});
  std::vector<CsvTable> tables = {wrong};
  try {
    render_plot(PlotKind::kCurves, tables, {});
    FAIL("expected a throw");
  } catch (const std::runtime_error& ex) {
    CHECK(std::string(ex.what()).find("mean_metric") != std::string::npos);
  }

  CsvTable empty;
  empty.header = {"episode", "agent", "mean_metric"};
  std::vector<CsvTable> none = {empty};
  CHECK_THROWS_AS(render_plot(PlotKind::kCurves, none, {}), std::runtime_error);

  CHECK(parse_plot_kind("curves") == PlotKind::kCurves);
  CHECK(parse_plot_kind("fig6") == PlotKind::kFig6Scatter);
  CHECK(parse_plot_kind("histogram") == PlotKind::kHistogram);
  try {
    parse_plot_kind("pie");
    FAIL("expected a throw");
  } catch (const std::invalid_argument& ex) {
    CHECK(std::string(ex.what()).find("curves") != std::string::npos);
  }
}

TEST_CASE("csv reading validates structure") {
  std::istringstream ok("a,b\r\n1,2\n\n3,4\n");
  CsvTable t = read_csv(ok);
  CHECK(t.header == std::vector<std::string>{"a", "b"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[1] == std::vector<std::string>{"3", "4"});
  CHECK(t.has_column("b"));
  CHECK_FALSE(t.has_column("c"));

  std::istringstream ragged("a,b\n1\n");
  CHECK_THROWS_AS(read_csv(ragged), std::runtime_error);
  std::istringstream empty("");
  CHECK_THROWS_AS(read_csv(empty), std::runtime_error);
  CHECK(parse_double("2.5") == 2.5);
  CHECK(parse_long("-3") == -3);
  CHECK_THROWS_AS(parse_double("2.5x"), std::runtime_error);
  CHECK_THROWS_AS(parse_long("1.5"), std::runtime_error);
}
