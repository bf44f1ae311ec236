#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "evalues/environments.hpp"
#include "evalues/mdp.hpp"
#include "evalues/rng.hpp"

using namespace evalues;

TEST_CASE("rng reproduces the same stream for the same seed") {
  SeededRng a(123), b(123), c(124);
  bool all_equal = true, any_differs = false;
  for (int i = 0; i < 100; ++i) {
    double va = a.uniform01();
    if (va != b.uniform01()) all_equal = false;
    if (va != c.uniform01()) any_differs = true;
    CHECK(va >= 0.0);
    CHECK(va < 1.0);
  }
  CHECK(all_equal);
  CHECK(any_differs);
}

TEST_CASE("rng uniform respects custom bounds") {
  SeededRng rng(7);
  for (int i = 0; i < 1000; ++i) {
    double v = rng.uniform(-0.6, -0.4);
    CHECK(v >= -0.6);
    CHECK(v < -0.4);
  }
}

TEST_CASE("sample_index follows the distribution and skips zero mass") {
  SeededRng rng(99);
  std::vector<double> probs = {0.2, 0.0, 0.5, 0.3};
  std::vector<int> counts(4, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    ++counts[rng.sample_index(probs)];
  }
  CHECK(counts[1] == 0);
  for (int a : {0, 2, 3}) {
    CHECK(std::abs(counts[a] / static_cast<double>(n) - probs[a]) < 0.01);
  }
  std::vector<double> empty_mass = {0.0, 0.0};
  CHECK_THROWS_AS(rng.sample_index(empty_mass), std::invalid_argument);
}

TEST_CASE("mdp builder validates probability sums") {
  TabularMdp mdp(2, 1, 0.9);
  mdp.set_initial_state(StateId{0});
  mdp.mark_terminal(StateId{1});
  mdp.set_transition(StateId{0}, ActionId{0},
                     {{StateId{0}, 0.5}, {StateId{1}, 0.4}});
  CHECK_THROWS_AS(mdp.validate(), std::invalid_argument);
}

TEST_CASE("mdp step on deterministic transitions consumes no randomness") {
  TabularMdp mdp(2, 1, 0.9);
  mdp.set_initial_state(StateId{0});
  mdp.mark_terminal(StateId{1});
  mdp.set_transition(StateId{0}, ActionId{0}, {{StateId{1}, 1.0}});
  mdp.set_reward(StateId{0}, ActionId{0}, {{2.5, 1.0}});
  mdp.validate();

  SeededRng rng(5), untouched(5);
  Transition tr = step(mdp, StateId{0}, ActionId{0}, rng);
  CHECK(tr.s_next == StateId{1});
  CHECK(tr.r == 2.5);
  CHECK(tr.done);
  CHECK(rng.uniform01() == untouched.uniform01());
}

TEST_CASE("mdp step matches declared probabilities empirically") {
  // Two-branch stochastic transition plus a Bernoulli reward; empirical
  // frequencies at 1e5 samples stay within 0.01 of the declared values.
  TabularMdp mdp(3, 1, 0.9);
  mdp.set_initial_state(StateId{0});
  mdp.mark_terminal(StateId{1});
  mdp.mark_terminal(StateId{2});
  mdp.set_transition(StateId{0}, ActionId{0},
                     {{StateId{1}, 0.3}, {StateId{2}, 0.7}});
  mdp.set_reward(StateId{0}, ActionId{0}, {{0.0, 0.6}, {1.0, 0.4}});
  mdp.validate();

  SeededRng rng(2024);
  const int n = 100000;
  int to_1 = 0, paid = 0;
  for (int i = 0; i < n; ++i) {
    Transition tr = step(mdp, StateId{0}, ActionId{0}, rng);
    if (tr.s_next.v == 1) ++to_1;
    if (tr.r == 1.0) ++paid;
  }
  CHECK(std::abs(to_1 / static_cast<double>(n) - 0.3) < 0.01);
  CHECK(std::abs(paid / static_cast<double>(n) - 0.4) < 0.01);
}

TEST_CASE("mdp step rejects terminal states and invalid actions") {
  TabularMdp mdp = make_bridge(3);
  SeededRng rng(1);
  CHECK_THROWS_AS(step(mdp, bridge_goal(3), ActionId{0}, rng),
                  std::logic_error);
  CHECK_THROWS_AS(step(mdp, StateId{0}, ActionId{2}, rng), std::logic_error);
}

TEST_CASE("bridge layout and rewards") {
  const int k = 5;
  TabularMdp mdp = make_bridge(k);
  CHECK(mdp.num_states() == k + 3);
  CHECK(mdp.num_actions() == 2);
  CHECK(mdp.discount() == 0.9);
  CHECK(mdp.initial_state().v == 0);
  CHECK(mdp.is_terminal(bridge_goal(k)));
  CHECK(mdp.is_terminal(bridge_trap(k)));

  SeededRng rng(3);
  // West from start falls into the trap for +1.
  Transition west = step(mdp, StateId{0}, ActionId{kBridgeWest}, rng);
  CHECK(west.s_next == bridge_trap(k));
  CHECK(west.r == 1.0);
  CHECK(west.done);
  // Walking east across the whole bridge pays 10 only on the last move.
  StateId s{0};
  double total = 0.0;
  for (int i = 0; i <= k; ++i) {
    Transition tr = step(mdp, s, ActionId{kBridgeEast}, rng);
    total += tr.r;
    if (i < k) {
      CHECK_FALSE(tr.done);
      s = tr.s_next;
    } else {
      CHECK(tr.done);
      CHECK(tr.s_next == bridge_goal(k));
    }
  }
  CHECK(total == 10.0);
}

TEST_CASE("normalized bridge scales rewards into [0, 1]") {
  TabularMdp mdp = make_bridge(4, /*normalized=*/true);
  auto [lo, hi] = mdp.reward_range();
  CHECK(lo == 0.0);
  CHECK(hi == 1.0);
  SeededRng rng(3);
  Transition west = step(mdp, StateId{0}, ActionId{kBridgeWest}, rng);
  CHECK(west.r == doctest::Approx(0.1));
}

TEST_CASE("tree has a single root action and k zero-reward leaves") {
  const int k = 4;
  TabularMdp mdp = make_tree(k);
  CHECK(mdp.num_states() == k + 2);
  CHECK(mdp.num_actions() == k);
  CHECK(mdp.valid_actions(StateId{0}) == 1);
  CHECK(mdp.valid_actions(StateId{1}) == k);

  SeededRng rng(11);
  Transition root = step(mdp, StateId{0}, ActionId{0}, rng);
  CHECK(root.s_next.v == 1);
  CHECK(root.r == 0.0);
  CHECK_FALSE(root.done);
  for (int a = 0; a < k; ++a) {
    Transition leaf = step(mdp, StateId{1}, ActionId{a}, rng);
    CHECK(leaf.s_next.v == 2 + a);
    CHECK(leaf.r == 0.0);
    CHECK(leaf.done);
  }
}

TEST_CASE("cliff geometry: step costs, cliff resets, goal terminates") {
  const int h = 4, w = 12;
  TabularMdp mdp = make_cliff(h, w);
  CHECK(mdp.num_states() == h * w);
  CHECK(mdp.num_actions() == 4);
  const int start = (h - 1) * w;
  const int goal = h * w - 1;
  CHECK(mdp.initial_state().v == start);
  CHECK(mdp.is_terminal(StateId{goal}));

  SeededRng rng(8);
  // Left from the start is a wall: stay in place, pay the step cost.
  Transition wall = step(mdp, StateId{start}, ActionId{2}, rng);
  CHECK(wall.s_next.v == start);
  CHECK(wall.r == -1.0);
  // Right from the start enters the cliff: back to start, -100.
  Transition cliff = step(mdp, StateId{start}, ActionId{3}, rng);
  CHECK(cliff.s_next.v == start);
  CHECK(cliff.r == -100.0);
  CHECK_FALSE(cliff.done);
  // One row above the cliff, moving right then down reaches the goal.
  Transition to_goal = step(mdp, StateId{goal - w}, ActionId{1}, rng);
  CHECK(to_goal.s_next.v == goal);
  CHECK(to_goal.r == -1.0);
  CHECK(to_goal.done);
}

TEST_CASE("mountain car physics: clamps, wall stop, goal, step cap") {
  MountainCarEnv env;
  SeededRng rng(21);
  for (int i = 0; i < 100; ++i) {
    ContinuousState s = mountain_car_start(rng);
    CHECK(s.position >= -0.6);
    CHECK(s.position < -0.4);
    CHECK(s.velocity == 0.0);
  }

  // Full throttle left into the wall zeroes the velocity.
  ContinuousState s{-1.19, -0.07};
  ContinuousStep st = mountain_car_step(env, s, ActionId{0}, 0);
  CHECK(st.s.position == MountainCarEnv::kMinPosition);
  CHECK(st.s.velocity == 0.0);
  CHECK_FALSE(st.done);

  // Crossing the goal position terminates with reward 1.
  ContinuousState near_goal{0.49, 0.07};
  st = mountain_car_step(env, near_goal, ActionId{2}, 10);
  CHECK(st.done);
  CHECK(st.reward == 1.0);
  CHECK(st.s.position >= env.goal_position);

  // The step cap ends the episode with reward 0.
  ContinuousState stuck{-0.5, 0.0};
  st = mountain_car_step(env, stuck, ActionId{1}, env.step_cap - 1);
  CHECK(st.done);
  CHECK(st.reward == 0.0);
  CHECK_THROWS_AS(mountain_car_step(env, stuck, ActionId{1}, env.step_cap),
                  std::logic_error);
}

TEST_CASE("mountain car velocity and position stay inside bounds") {
  MountainCarEnv env;
  SeededRng rng(77);
  ContinuousState s = mountain_car_start(rng);
  for (int t = 0; t < env.step_cap; ++t) {
    int a = static_cast<int>(rng.uniform01() * 3);
    ContinuousStep st = mountain_car_step(env, s, ActionId{a}, t);
    CHECK(st.s.position >= MountainCarEnv::kMinPosition);
    CHECK(st.s.position <= MountainCarEnv::kMaxPosition);
    CHECK(std::abs(st.s.velocity) <= MountainCarEnv::kMaxSpeed);
    if (st.done) break;
    s = st.s;
  }
}
