#include "gwmlp/trainer.hpp"

#include <cmath>
#include <numeric>

#include "gwmlp/error.hpp"
#include "gwmlp/rng.hpp"

namespace gwmlp {

std::string to_string(OptimizerKind k) {
  return k == OptimizerKind::Adam ? "adam" : "sgd";
}

OptimizerKind optimizer_from_string(const std::string& s) {
  if (s == "adam") return OptimizerKind::Adam;
  if (s == "sgd") return OptimizerKind::Sgd;
  throw ConfigError("unknown optimizer '" + s + "' (expected adam or sgd)");
}

namespace {

std::vector<Matrix*> model_params(MlpModel& model) {
  std::vector<Matrix*> params;
  for (std::size_t l = 0; l < model.layer_count(); ++l) {
    params.push_back(&model.weights[l]);
    params.push_back(&model.biases[l]);
  }
  return params;
}

std::vector<const Matrix*> gradient_tensors(const Gradients& grads) {
  std::vector<const Matrix*> tensors;
  for (std::size_t l = 0; l < grads.d_weights.size(); ++l) {
    tensors.push_back(&grads.d_weights[l]);
    tensors.push_back(&grads.d_biases[l]);
  }
  return tensors;
}

void check_loss(double loss, std::size_t epoch) {
  if (!std::isfinite(loss)) {
    throw NumericError("training diverged: non-finite loss at epoch " +
                       std::to_string(epoch));
  }
}

} // namespace

TrainResult train_mlp(MlpModel& model, AdamState& opt_state, const Matrix& x,
                      const Matrix& y, const TrainOptions& opts) {
  if (x.rows() != y.rows()) {
    throw ShapeError("train_mlp: " + std::to_string(x.rows()) + " inputs vs " +
                     std::to_string(y.rows()) + " targets");
  }
  if (opts.epochs == 0) {
    throw ConfigError("train_mlp: epochs must be >= 1");
  }

  const auto params = model_params(model);
  const bool full_batch = opts.batch_size == 0 || opts.batch_size >= x.rows();
  RngState shuffle_rng(opts.shuffle_seed);
  std::vector<std::size_t> order(x.rows());
  std::iota(order.begin(), order.end(), 0);

  double epoch_loss = 0.0;
  for (std::size_t epoch = 1; epoch <= opts.epochs; ++epoch) {
    if (full_batch) {
      const ForwardTrace trace = mlp_forward(model, x);
      epoch_loss = mse_loss(trace.output(), y);
      check_loss(epoch_loss, epoch);
      const Gradients grads = mlp_backward(model, trace, y);
      const auto grad_ptrs = gradient_tensors(grads);
      if (opts.optimizer == OptimizerKind::Adam) {
        adam_step(opt_state, params, grad_ptrs, opts.hyper);
      } else {
        sgd_step(params, grad_ptrs, opts.hyper.eta);
      }
    } else {
      for (std::size_t i = order.size() - 1; i > 0; --i) {
        const std::size_t j = shuffle_rng.next_u64() % (i + 1);
        std::swap(order[i], order[j]);
      }
      for (std::size_t start = 0; start < order.size(); start += opts.batch_size) {
        const std::size_t stop = std::min(start + opts.batch_size, order.size());
        const std::span<const std::size_t> chunk(order.data() + start, stop - start);
        const Matrix xb = take_rows(x, chunk);
        const Matrix yb = take_rows(y, chunk);
        const ForwardTrace trace = mlp_forward(model, xb);
        const Gradients grads = mlp_backward(model, trace, yb);
        const auto grad_ptrs = gradient_tensors(grads);
        if (opts.optimizer == OptimizerKind::Adam) {
          adam_step(opt_state, params, grad_ptrs, opts.hyper);
        } else {
          sgd_step(params, grad_ptrs, opts.hyper.eta);
        }
      }
      epoch_loss = mse_loss(mlp_predict(model, x), y);
      check_loss(epoch_loss, epoch);
    }

    if (opts.on_log && opts.log_every > 0 &&
        (epoch % opts.log_every == 0 || epoch == opts.epochs)) {
      opts.on_log(epoch, epoch_loss);
    }
  }

  TrainResult result;
  result.final_loss = mse_loss(mlp_predict(model, x), y);
  check_loss(result.final_loss, opts.epochs);
  result.epochs_run = opts.epochs;
  return result;
}

TrainResult train_mlp(MlpModel& model, const Matrix& x, const Matrix& y,
                      const TrainOptions& opts) {
  std::vector<std::pair<std::size_t, std::size_t>> shapes;
  for (std::size_t l = 0; l < model.layer_count(); ++l) {
    shapes.emplace_back(model.weights[l].rows(), model.weights[l].cols());
    shapes.emplace_back(model.biases[l].rows(), model.biases[l].cols());
  }
  AdamState state = adam_init(opts.hyper, shapes);
  return train_mlp(model, state, x, y, opts);
}

} // namespace gwmlp
