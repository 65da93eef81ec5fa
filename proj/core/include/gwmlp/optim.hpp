#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gwmlp/matrix.hpp"

namespace gwmlp {

/// Adam hyperparameters. Defaults are the canonical ones: eta 0.001,
/// beta1 0.9, beta2 0.999, epsilon 1e-8.
struct AdamHyper {
  double eta = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  /// Throws ConfigError unless eta > 0, 0 <= beta1 < 1, 0 <= beta2 < 1,
  /// epsilon > 0.
  void validate() const;
};

/// First/second moment accumulators, shape-congruent with the parameter
/// list, plus the completed-step counter. v entries stay >= 0.
struct AdamState {
  std::vector<Matrix> m;
  std::vector<Matrix> v;
  std::int64_t t = 0;
};

/// Zeroed moments for the given parameter shapes, t = 0.
AdamState adam_init(const AdamHyper& hyper,
                    std::span<const std::pair<std::size_t, std::size_t>> shapes);

/// One Adam step, updating params in place:
///   m <- b1*m + (1-b1)*g;  v <- b2*v + (1-b2)*g^2
///   m^ = m/(1-b1^t');      v^ = v/(1-b2^t')
///   p <- p - eta * m^ / (sqrt(v^) + eps)
/// epsilon is added after the square root, outside it.
void adam_step(AdamState& state, std::span<Matrix* const> params,
               std::span<const Matrix* const> grads, const AdamHyper& hyper);

void adam_step(AdamState& state, std::vector<Matrix>& params,
               const std::vector<Matrix>& grads, const AdamHyper& hyper);

/// Plain gradient descent, p <- p - eta*g, used as the comparison baseline.
void sgd_step(std::span<Matrix* const> params,
              std::span<const Matrix* const> grads, double eta);

void sgd_step(std::vector<Matrix>& params, const std::vector<Matrix>& grads,
              double eta);

} // namespace gwmlp
