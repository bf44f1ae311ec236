#include "evalues/tile_coding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace evalues {

TileCoder::TileCoder(int num_tilings, int tiles_x, int tiles_y, double lo_x,
                     double hi_x, double lo_y, double hi_y, int num_actions)
    : num_tilings_(num_tilings),
      tiles_x_(tiles_x),
      tiles_y_(tiles_y),
      lo_x_(lo_x),
      hi_x_(hi_x),
      lo_y_(lo_y),
      hi_y_(hi_y),
      num_actions_(num_actions) {
  if (num_tilings < 1 || tiles_x < 1 || tiles_y < 1 || num_actions < 1) {
    throw std::invalid_argument("tile coder dimensions must be positive");
  }
  if (!(hi_x > lo_x) || !(hi_y > lo_y)) {
    throw std::invalid_argument("tile coder bounds must be non-degenerate");
  }
}

SparseFeatures TileCoder::features(ContinuousState s, ActionId a) const {
  if (a.v < 0 || a.v >= num_actions_) {
    throw std::invalid_argument("tile coder: invalid action");
  }
  double width_x = (hi_x_ - lo_x_) / tiles_x_;
  double width_y = (hi_y_ - lo_y_) / tiles_y_;
  SparseFeatures phi;
  phi.active_indices.reserve(static_cast<std::size_t>(num_tilings_));
  for (int i = 0; i < num_tilings_; ++i) {
    double shift = static_cast<double>(i) / num_tilings_;
    double origin_x = lo_x_ - shift * width_x;
    double origin_y = lo_y_ - shift * width_y;
    int ix = static_cast<int>(std::floor((s.position - origin_x) / width_x));
    int iy = static_cast<int>(std::floor((s.velocity - origin_y) / width_y));
    ix = std::clamp(ix, 0, tiles_x_ - 1);
    iy = std::clamp(iy, 0, tiles_y_ - 1);
    int id = ((a.v * num_tilings_ + i) * tiles_x_ + ix) * tiles_y_ + iy;
    phi.active_indices.push_back(id);
  }
  return phi;
}

SparseFeatures tile_features(const TileCoder& coder, ContinuousState s,
                             ActionId a) {
  return coder.features(s, a);
}

TileCoder mountain_car_coder() {
  return TileCoder(8, 8, 8, MountainCarEnv::kMinPosition,
                   MountainCarEnv::kMaxPosition, -MountainCarEnv::kMaxSpeed,
                   MountainCarEnv::kMaxSpeed, 3);
}

}  // namespace evalues
