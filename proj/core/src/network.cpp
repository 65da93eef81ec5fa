#include "gwmlp/network.hpp"

#include <cmath>

#include "gwmlp/error.hpp"

namespace gwmlp {

std::string to_string(Activation a) {
  return a == Activation::Relu ? "relu" : "linear";
}

Activation activation_from_string(const std::string& s) {
  if (s == "relu") return Activation::Relu;
  if (s == "linear") return Activation::Linear;
  throw ConfigError("unknown activation '" + s + "' (expected linear or relu)");
}

namespace {

Matrix apply_activation(const Matrix& z, Activation a) {
  return a == Activation::Relu ? map(z, relu) : z;
}

Matrix activation_gradient(const Matrix& z, Activation a) {
  if (a == Activation::Relu) return map(z, relu_grad);
  Matrix ones(z.rows(), z.cols());
  for (double& v : ones.values()) v = 1.0;
  return ones;
}

} // namespace

MlpModel init_mlp(const std::vector<std::size_t>& layer_sizes,
                  Activation output_activation, RngState& rng) {
  if (layer_sizes.size() < 2) {
    throw ConfigError("init_mlp: need at least input and output layer sizes, got " +
                      std::to_string(layer_sizes.size()));
  }
  for (std::size_t n : layer_sizes) {
    if (n == 0) throw ConfigError("init_mlp: layer sizes must be >= 1");
  }

  MlpModel model;
  model.layer_sizes = layer_sizes;
  model.output_activation = output_activation;
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    const std::size_t fan_in = layer_sizes[l];
    const std::size_t fan_out = layer_sizes[l + 1];
    const double stddev = std::sqrt(2.0 / static_cast<double>(fan_in));
    model.weights.push_back(scaled(rng_standard_normal(rng, fan_in, fan_out), stddev));
    model.biases.emplace_back(1, fan_out);
  }
  return model;
}

ForwardTrace mlp_forward(const MlpModel& model, const Matrix& x_batch) {
  if (x_batch.cols() != model.input_size()) {
    throw ShapeError("mlp_forward: input has " + std::to_string(x_batch.cols()) +
                     " features, model expects " + std::to_string(model.input_size()));
  }

  ForwardTrace trace;
  trace.activations.push_back(x_batch);
  const std::size_t layers = model.layer_count();
  for (std::size_t l = 0; l < layers; ++l) {
    Matrix z = add_row_broadcast(mat_mul(trace.activations.back(), model.weights[l]),
                                 model.biases[l]);
    const Activation act =
        (l + 1 == layers) ? model.output_activation : model.hidden_activation;
    trace.activations.push_back(apply_activation(z, act));
    trace.pre_activations.push_back(std::move(z));
  }
  return trace;
}

Matrix mlp_predict(const MlpModel& model, const Matrix& x_batch) {
  return mlp_forward(model, x_batch).output();
}

double mse_loss(const Matrix& pred, const Matrix& target) {
  if (pred.rows() == 0 || target.rows() == 0) {
    throw DataError("mse_loss: empty batch");
  }
  if (!pred.same_shape(target) || pred.cols() != 1) {
    throw ShapeError("mse_loss: shape mismatch " + pred.shape_str() + " vs " +
                     target.shape_str() + " (need Bx1)");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double r = pred.values()[i] - target.values()[i];
    sum += r * r;
  }
  return sum / static_cast<double>(pred.rows());
}

Gradients mlp_backward(const MlpModel& model, const ForwardTrace& trace,
                       const Matrix& target) {
  const std::size_t layers = model.layer_count();
  if (trace.pre_activations.size() != layers ||
      trace.activations.size() != layers + 1) {
    throw ShapeError("mlp_backward: trace does not match model depth");
  }
  const Matrix& pred = trace.output();
  if (!pred.same_shape(target) || target.cols() != 1) {
    throw ShapeError("mlp_backward: target shape " + target.shape_str() +
                     " does not match output " + pred.shape_str());
  }

  const double batch = static_cast<double>(target.rows());

  // d(mse)/d(pred) = 2*(pred - target)/B; from there the usual chain rule.
  Matrix delta = scaled(sub(pred, target), 2.0 / batch);
  delta = hadamard(delta,
                   activation_gradient(trace.pre_activations.back(),
                                       model.output_activation));

  Gradients grads;
  grads.d_weights.resize(layers);
  grads.d_biases.resize(layers);
  for (std::size_t l = layers; l-- > 0;) {
    grads.d_weights[l] = mat_mul(mat_transpose(trace.activations[l]), delta);
    grads.d_biases[l] = col_sum(delta);
    if (l > 0) {
      delta = hadamard(mat_mul(delta, mat_transpose(model.weights[l])),
                       activation_gradient(trace.pre_activations[l - 1],
                                           model.hidden_activation));
    }
  }
  return grads;
}

} // namespace gwmlp
