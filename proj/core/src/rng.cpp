#include "evalues/rng.hpp"

#include <stdexcept>

namespace evalues {

std::size_t SeededRng::sample_index(std::span<const double> probs) {
  if (probs.empty()) {
    throw std::invalid_argument("sample_index: empty distribution");
  }
  const double u = uniform01();
  double cum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    cum += probs[i];
    if (u < cum) return i;
  }
  // Round-off can leave the cumulative sum marginally below 1. Fall back to
  // the last entry with positive mass.
  for (std::size_t i = probs.size(); i-- > 0;) {
    if (probs[i] > 0.0) return i;
  }
  throw std::invalid_argument("sample_index: distribution sums to zero");
}

}  // namespace evalues
