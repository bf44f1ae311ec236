#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace evalues {

/// Deterministic random source. Every stochastic choice in a simulation
/// (action sampling, transition/reward draws, start states, weight init)
/// flows through one of these, so a seed plus a call sequence fully
/// determines the outcome, bit for bit, on any platform.
///
/// The engine is std::mt19937_64. Floating-point draws deliberately avoid
/// std::uniform_real_distribution, whose output is implementation-defined;
/// the 53-bit conversion below is fixed everywhere.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1), 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Inverse-CDF draw from a finite distribution. `probs` must be
  /// non-negative and sum to 1 (up to round-off); entries with zero
  /// probability are never returned.
  std::size_t sample_index(std::span<const double> probs);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace evalues
