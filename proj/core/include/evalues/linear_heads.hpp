#pragma once

#include <stdexcept>
#include <vector>

#include "evalues/rng.hpp"
#include "evalues/tile_coding.hpp"

namespace evalues {

/// Thrown when a learner's TD error stops being finite; the surrounding
/// trial must be aborted and the failure recorded.
struct DivergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Linear action-value head over sparse binary features. Weights start at
/// small random values in [-0.01, 0.01].
struct LinearQHead {
  std::vector<double> weights;

  LinearQHead(int total_features, SeededRng& rng);
};

/// Logistic action-value head for E-values: e = sigma(w . phi), strictly
/// inside (0, 1). Weights start at exactly 0, so e = 0.5 everywhere.
struct LogisticEHead {
  std::vector<double> weights;

  explicit LogisticEHead(int total_features)
      : weights(static_cast<std::size_t>(total_features), 0.0) {}
};

double q_predict(const LinearQHead& head, const SparseFeatures& phi);
double e_predict(const LogisticEHead& head, const SparseFeatures& phi);

/// Semi-gradient TD(0) step on the linear head:
///   delta = r + gamma * q(phi_next) * [not done] - q(phi)
///   w[i] += (alpha / num_tilings) * delta   for active i
/// `phi_next` must encode (s', greedy a'). Throws DivergenceError if delta
/// is not finite.
void linear_q_step(LinearQHead& head, const SparseFeatures& phi, double r,
                   const SparseFeatures& phi_next, double gamma, double alpha,
                   bool done);

/// Semi-gradient step through the logistic output on squared TD error with
/// frozen target:
///   target = gamma_e * e(phi_next) * [not done]
///   w[i] += (alpha_e / num_tilings) * (target - e) * e * (1 - e)
/// `phi_next` must encode the realized next pair (s', a').
void logistic_e_step(LogisticEHead& head, const SparseFeatures& phi,
                     const SparseFeatures& phi_next, double gamma_e,
                     double alpha_e, bool done);

}  // namespace evalues
