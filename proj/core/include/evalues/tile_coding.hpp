#pragma once

#include <vector>

#include "evalues/environments.hpp"
#include "evalues/mdp.hpp"

namespace evalues {

/// Binary feature vector with exactly num_tilings active indices, strictly
/// increasing, each < the coder's total feature count.
struct SparseFeatures {
  std::vector<int> active_indices;
};

/// Tile coding over a 2-D (position, velocity) box: `num_tilings` grids of
/// tiles_x by tiles_y tiles, tiling i shifted by -(i / num_tilings) of a
/// tile width in each dimension. Actions occupy disjoint feature blocks.
/// Out-of-bounds states clamp into the edge tiles, keeping the coder total.
class TileCoder {
 public:
  TileCoder(int num_tilings, int tiles_x, int tiles_y, double lo_x,
            double hi_x, double lo_y, double hi_y, int num_actions);

  int num_tilings() const { return num_tilings_; }
  int num_actions() const { return num_actions_; }
  int total_features() const {
    return num_tilings_ * tiles_x_ * tiles_y_ * num_actions_;
  }

  SparseFeatures features(ContinuousState s, ActionId a) const;

 private:
  int num_tilings_;
  int tiles_x_;
  int tiles_y_;
  double lo_x_;
  double hi_x_;
  double lo_y_;
  double hi_y_;
  int num_actions_;
};

SparseFeatures tile_features(const TileCoder& coder, ContinuousState s,
                             ActionId a);

/// The standard coder used for MountainCar: 8 tilings of 8x8 tiles over
/// position [-1.2, 0.6] and velocity [-0.07, 0.07], 3 actions.
TileCoder mountain_car_coder();

}  // namespace evalues
