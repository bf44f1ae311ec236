#include "evalues/linear_heads.hpp"

#include <cmath>

namespace evalues {

LinearQHead::LinearQHead(int total_features, SeededRng& rng)
    : weights(static_cast<std::size_t>(total_features)) {
  for (auto& w : weights) w = rng.uniform(-0.01, 0.01);
}

double q_predict(const LinearQHead& head, const SparseFeatures& phi) {
  double sum = 0.0;
  for (int i : phi.active_indices) sum += head.weights[i];
  return sum;
}

double e_predict(const LogisticEHead& head, const SparseFeatures& phi) {
  double z = 0.0;
  for (int i : phi.active_indices) z += head.weights[i];
  return 1.0 / (1.0 + std::exp(-z));
}

void linear_q_step(LinearQHead& head, const SparseFeatures& phi, double r,
                   const SparseFeatures& phi_next, double gamma, double alpha,
                   bool done) {
  double bootstrap = done ? 0.0 : q_predict(head, phi_next);
  double delta = r + gamma * bootstrap - q_predict(head, phi);
  if (!std::isfinite(delta)) {
    throw DivergenceError("linear Q head diverged: TD error is not finite");
  }
  double step = alpha / static_cast<double>(phi.active_indices.size()) * delta;
  for (int i : phi.active_indices) head.weights[i] += step;
}

void logistic_e_step(LogisticEHead& head, const SparseFeatures& phi,
                     const SparseFeatures& phi_next, double gamma_e,
                     double alpha_e, bool done) {
  double target = done ? 0.0 : gamma_e * e_predict(head, phi_next);
  double e = e_predict(head, phi);
  double step = alpha_e / static_cast<double>(phi.active_indices.size()) *
                (target - e) * e * (1.0 - e);
  for (int i : phi.active_indices) head.weights[i] += step;
}

}  // namespace evalues
