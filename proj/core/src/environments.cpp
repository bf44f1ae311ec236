#include "evalues/environments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace evalues {

StateId bridge_goal(int k) { return StateId{k + 1}; }
StateId bridge_trap(int k) { return StateId{k + 2}; }

TabularMdp make_bridge(int k, bool normalized, double discount) {
  if (k < 1) {
    throw std::invalid_argument("make_bridge: k must be >= 1");
  }
  const double goal_reward = normalized ? 1.0 : 10.0;
  const double trap_reward = normalized ? 0.1 : 1.0;

  TabularMdp mdp(k + 3, 2, discount);
  const StateId start{0};
  const StateId goal = bridge_goal(k);
  const StateId trap = bridge_trap(k);
  mdp.set_initial_state(start);
  mdp.mark_terminal(goal);
  mdp.mark_terminal(trap);

  const ActionId east{kBridgeEast};
  const ActionId west{kBridgeWest};

  auto point = [](StateId to) { return std::vector<NextState>{{to, 1.0}}; };
  auto pay = [](double r) { return std::vector<RewardDraw>{{r, 1.0}}; };

  mdp.set_transition(start, east, point(StateId{1}));
  mdp.set_transition(start, west, point(trap));
  mdp.set_reward(start, west, pay(trap_reward));

  for (int i = 1; i <= k; ++i) {
    const StateId cell{i};
    if (i < k) {
      mdp.set_transition(cell, east, point(StateId{i + 1}));
    } else {
      mdp.set_transition(cell, east, point(goal));
      mdp.set_reward(cell, east, pay(goal_reward));
    }
    mdp.set_transition(cell, west, point(StateId{i - 1}));
  }

  mdp.validate();
  return mdp;
}

TabularMdp make_tree(int k, double discount) {
  if (k < 1) {
    throw std::invalid_argument("make_tree: k must be >= 1");
  }
  TabularMdp mdp(k + 2, k, discount);
  const StateId root{0};
  const StateId chooser{1};
  mdp.set_initial_state(root);
  mdp.set_valid_actions(root, 1);
  mdp.set_transition(root, ActionId{0}, {{chooser, 1.0}});
  for (int i = 0; i < k; ++i) {
    const StateId leaf{2 + i};
    mdp.mark_terminal(leaf);
    mdp.set_transition(chooser, ActionId{i}, {{leaf, 1.0}});
  }
  mdp.validate();
  return mdp;
}

TabularMdp make_cliff(int height, int width, double discount) {
  if (height < 2 || width < 2) {
    throw std::invalid_argument("make_cliff: grid must be at least 2x2");
  }
  TabularMdp mdp(height * width, 4, discount);
  const int bottom = height - 1;
  auto cell = [&](int row, int col) { return StateId{row * width + col}; };
  const StateId start = cell(bottom, 0);
  const StateId goal = cell(bottom, width - 1);
  mdp.set_initial_state(start);
  mdp.mark_terminal(goal);

  auto is_cliff = [&](int row, int col) {
    return row == bottom && col > 0 && col < width - 1;
  };

  // Action deltas: up, down, left, right.
  constexpr int kDr[4] = {-1, 1, 0, 0};
  constexpr int kDc[4] = {0, 0, -1, 1};

  for (int row = 0; row < height; ++row) {
    for (int col = 0; col < width; ++col) {
      const StateId s = cell(row, col);
      if (s == goal) continue;
      for (int a = 0; a < 4; ++a) {
        int nr = row + kDr[a];
        int nc = col + kDc[a];
        if (nr < 0 || nr >= height || nc < 0 || nc >= width) {
          nr = row;  // wall
          nc = col;
        }
        if (is_cliff(nr, nc)) {
          mdp.set_transition(s, ActionId{a}, {{start, 1.0}});
          mdp.set_reward(s, ActionId{a}, {{-100.0, 1.0}});
        } else {
          mdp.set_transition(s, ActionId{a}, {{cell(nr, nc), 1.0}});
          mdp.set_reward(s, ActionId{a}, {{-1.0, 1.0}});
        }
      }
    }
  }
  mdp.validate();
  return mdp;
}

ContinuousState mountain_car_start(SeededRng& rng) {
  return ContinuousState{rng.uniform(-0.6, -0.4), 0.0};
}

ContinuousStep mountain_car_step(const MountainCarEnv& env, ContinuousState s,
                                 ActionId a, int t) {
  if (t >= env.step_cap) {
    throw std::logic_error("mountain_car_step: called after episode end");
  }
  if (a.v < 0 || a.v >= env.num_actions) {
    throw std::logic_error("mountain_car_step: invalid action " +
                           std::to_string(a.v));
  }

  double v = s.velocity + MountainCarEnv::kForce * (a.v - 1) -
             MountainCarEnv::kGravity * std::cos(3.0 * s.position);
  v = std::clamp(v, -MountainCarEnv::kMaxSpeed, MountainCarEnv::kMaxSpeed);
  double p = s.position + v;
  if (p <= MountainCarEnv::kMinPosition) {
    p = MountainCarEnv::kMinPosition;
    if (v < 0.0) v = 0.0;
  } else if (p > MountainCarEnv::kMaxPosition) {
    p = MountainCarEnv::kMaxPosition;
  }

  ContinuousStep out;
  out.s = ContinuousState{p, v};
  if (p >= env.goal_position) {
    out.reward = 1.0;
    out.done = true;
  } else if (t + 1 >= env.step_cap) {
    out.reward = 0.0;
    out.done = true;
  }
  return out;
}

}  // namespace evalues
