#include <benchmark/benchmark.h>

#include "evalues/agent.hpp"
#include "evalues/environments.hpp"
#include "evalues/fa_agent.hpp"
#include "evalues/linear_heads.hpp"
#include "evalues/oracle.hpp"
#include "evalues/selection.hpp"
#include "evalues/tables.hpp"
#include "evalues/tile_coding.hpp"

namespace {

void BM_TableUpdates(benchmark::State& state) {
  auto mdp = evalues::make_bridge(15);
  evalues::ValueTable q(mdp, 0.0);
  evalues::ExplorationTable e(mdp, 0.1, 0.9);
  evalues::Transition tr{evalues::StateId{3}, evalues::ActionId{0}, 0.0,
                         evalues::StateId{4}, false};
  for (auto _ : state) {
    evalues::q_update(q, tr, 0.1, 0.9);
    evalues::e_update(e, tr.s, tr.a, tr.s_next, evalues::ActionId{0}, false);
    benchmark::DoNotOptimize(q.at(tr.s, tr.a));
    benchmark::DoNotOptimize(e.at(tr.s, tr.a));
  }
}
BENCHMARK(BM_TableUpdates);

void BM_LllSelect(benchmark::State& state) {
  std::vector<double> f = {0.05, 0.05, 0.4, 0.3, 0.2};
  std::vector<double> gc = {3.0, 0.0, 12.5, 7.1, 1.4};
  for (auto _ : state) {
    benchmark::DoNotOptimize(evalues::lll_select(f, gc));
  }
}
BENCHMARK(BM_LllSelect);

void BM_ValueIterationBridge15(benchmark::State& state) {
  auto mdp = evalues::make_bridge(15);
  for (auto _ : state) {
    auto sol = evalues::value_iteration(mdp);
    benchmark::DoNotOptimize(sol.q_star.data());
  }
}
BENCHMARK(BM_ValueIterationBridge15);

void BM_TileFeaturesPredict(benchmark::State& state) {
  auto coder = evalues::mountain_car_coder();
  evalues::SeededRng rng(7);
  evalues::LinearQHead head(coder.total_features(), rng);
  evalues::ContinuousState s{-0.5, 0.01};
  for (auto _ : state) {
    auto phi = evalues::tile_features(coder, s, evalues::ActionId{1});
    benchmark::DoNotOptimize(evalues::q_predict(head, phi));
  }
}
BENCHMARK(BM_TileFeaturesPredict);

void BM_BridgeEpisode(benchmark::State& state) {
  auto mdp = evalues::make_bridge(5);
  evalues::AgentSpec spec;
  spec.kind = "softmax-lll-evalue";
  for (auto _ : state) {
    state.PauseTiming();
    evalues::TabularAgent agent(mdp, spec);
    evalues::SeededRng rng(42);
    state.ResumeTiming();
    for (int ep = 0; ep < 10; ++ep) {
      benchmark::DoNotOptimize(agent.run_episode(rng, 10000).steps);
    }
  }
}
BENCHMARK(BM_BridgeEpisode);

}  // namespace

BENCHMARK_MAIN();
