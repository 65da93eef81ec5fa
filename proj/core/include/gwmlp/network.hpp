#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gwmlp/matrix.hpp"
#include "gwmlp/rng.hpp"

namespace gwmlp {

enum class Activation { Linear, Relu };

std::string to_string(Activation a);
Activation activation_from_string(const std::string& s);

inline double relu(double x) { return x > 0.0 ? x : 0.0; }

/// Subgradient of relu; the convention at the kink is relu_grad(0) == 0.
inline double relu_grad(double x) { return x > 0.0 ? 1.0 : 0.0; }

/// Fully connected feed-forward network. weights[l] is n_l x n_{l+1},
/// biases[l] is 1 x n_{l+1}. Hidden layers apply ReLU; the output layer
/// applies output_activation (Linear by default, so standardized targets
/// can be negative).
struct MlpModel {
  std::vector<std::size_t> layer_sizes;
  std::vector<Matrix> weights;
  std::vector<Matrix> biases;
  Activation hidden_activation = Activation::Relu;
  Activation output_activation = Activation::Linear;

  std::size_t layer_count() const { return weights.size(); }
  std::size_t input_size() const { return layer_sizes.front(); }
  std::size_t output_size() const { return layer_sizes.back(); }
};

/// He-initialized model: weights ~ normal(0, sqrt(2/fan_in)), biases zero.
/// Reproducible per seed through the passed-in generator.
MlpModel init_mlp(const std::vector<std::size_t>& layer_sizes,
                  Activation output_activation, RngState& rng);

/// Intermediates of one forward pass. activations[0] is the input batch;
/// activations[l+1] == activation(pre_activations[l]) elementwise.
struct ForwardTrace {
  std::vector<Matrix> pre_activations;
  std::vector<Matrix> activations;

  const Matrix& output() const { return activations.back(); }
};

/// Per layer: z = a.W + bias, a' = phi(z). Keeps all intermediates.
ForwardTrace mlp_forward(const MlpModel& model, const Matrix& x_batch);

/// Final activations only, no trace retained.
Matrix mlp_predict(const MlpModel& model, const Matrix& x_batch);

/// Mean of squared residuals over the batch, (1/B) * sum (pred - target)^2.
/// Both arguments must be Bx1.
double mse_loss(const Matrix& pred, const Matrix& target);

struct Gradients {
  std::vector<Matrix> d_weights;
  std::vector<Matrix> d_biases;
};

/// Exact gradient of mse_loss w.r.t. every weight and bias, by reverse-mode
/// chain rule over the trace. The 1/B loss normalization is carried in the
/// output delta, so bias gradients are plain column sums of the layer delta.
Gradients mlp_backward(const MlpModel& model, const ForwardTrace& trace,
                       const Matrix& target);

} // namespace gwmlp
