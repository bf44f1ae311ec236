#pragma once

#include "evalues/mdp.hpp"
#include "evalues/rng.hpp"

namespace evalues {

// ---------------------------------------------------------------------------
// Bridge
// ---------------------------------------------------------------------------
// A line of k bridge cells between two terminals. The start state offers a
// small immediate reward for retreating (west into the trap terminal, +1)
// against a large delayed one for crossing the whole bridge (east from the
// last cell into the goal terminal, +10). All other moves pay 0.
//
// States: 0 = start, 1..k = bridge cells, k+1 = goal, k+2 = trap.
// Actions: 0 = east, 1 = west. Discount 0.9, so crossing beats retreating
// (10 * 0.9^k > 1) for every k <= 21.
//
// `normalized` rescales all rewards into [0, 1] by dividing by the maximum
// reward; the optimal policy is unchanged.
TabularMdp make_bridge(int k, bool normalized = false, double discount = 0.9);

inline constexpr int kBridgeEast = 0;
inline constexpr int kBridgeWest = 1;
StateId bridge_goal(int k);
StateId bridge_trap(int k);

// ---------------------------------------------------------------------------
// Tree
// ---------------------------------------------------------------------------
// Depth-2 tree: the root has a single action leading to a chooser node with
// k actions, each ending in a distinct terminal leaf. All rewards are 0, so
// Q* vanishes everywhere and the environment isolates pure exploration.
//
// States: 0 = root (1 action), 1 = chooser (k actions), 2..k+1 = leaves.
TabularMdp make_tree(int k, double discount = 0.9);

// ---------------------------------------------------------------------------
// Cliff
// ---------------------------------------------------------------------------
// Standard cliff-walking grid. Start bottom-left, goal bottom-right
// (terminal), the interior of the bottom row is the cliff: stepping into it
// costs -100 and teleports back to the start. Every other move costs -1;
// off-grid moves are no-ops. Actions: 0 = up, 1 = down, 2 = left, 3 = right.
// States are row-major with row 0 at the top. Discount 0.99.
TabularMdp make_cliff(int height, int width, double discount = 0.99);

// ---------------------------------------------------------------------------
// MountainCar (continuous)
// ---------------------------------------------------------------------------

/// Car state on the track. Position in [-1.2, 0.6], velocity in
/// [-0.07, 0.07].
struct ContinuousState {
  double position = 0.0;
  double velocity = 0.0;
};

/// Sparse-reward MountainCar: reward 1 on reaching the goal position, 0
/// otherwise; an episode ends at the goal or after `step_cap` steps.
/// Actions: 0 = reverse, 1 = neutral, 2 = forward.
struct MountainCarEnv {
  int step_cap = 1000;
  int num_actions = 3;
  double goal_position = 0.5;

  static constexpr double kMinPosition = -1.2;
  static constexpr double kMaxPosition = 0.6;
  static constexpr double kMaxSpeed = 0.07;
  static constexpr double kForce = 0.001;
  static constexpr double kGravity = 0.0025;
};

struct ContinuousStep {
  ContinuousState s;
  double reward = 0.0;
  bool done = false;
};

/// Standard start distribution: position uniform in [-0.6, -0.4], velocity 0.
ContinuousState mountain_car_start(SeededRng& rng);

/// One step of the classical dynamics. `t` is the number of steps already
/// taken this episode; calling with t >= step_cap (i.e. after done) is a
/// contract violation. Hitting the left wall zeroes the velocity.
ContinuousStep mountain_car_step(const MountainCarEnv& env, ContinuousState s,
                                 ActionId a, int t);

}  // namespace evalues
