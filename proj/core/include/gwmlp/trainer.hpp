#pragma once

#include <cstdint>
#include <functional>

#include "gwmlp/network.hpp"
#include "gwmlp/optim.hpp"

namespace gwmlp {

enum class OptimizerKind { Adam, Sgd };

std::string to_string(OptimizerKind k);
OptimizerKind optimizer_from_string(const std::string& s);

struct TrainOptions {
  OptimizerKind optimizer = OptimizerKind::Adam;
  AdamHyper hyper;              // eta is shared with sgd
  std::size_t epochs = 2000;
  std::size_t batch_size = 0;   // 0 = full batch
  std::uint64_t shuffle_seed = 0;
  std::size_t log_every = 100;
  std::function<void(std::size_t epoch, double loss)> on_log;
};

struct TrainResult {
  double final_loss = 0.0;      // training-set MSE after the last epoch
  std::size_t epochs_run = 0;
};

/// Gradient-descent training of the model on (x, y) with the configured
/// optimizer. Full-batch runs are deterministic given the initial model;
/// minibatch runs shuffle with shuffle_seed each epoch. A non-finite loss
/// raises NumericError. opt_state lets a checkpointed run resume; it is
/// ignored when optimizer == Sgd.
TrainResult train_mlp(MlpModel& model, AdamState& opt_state, const Matrix& x,
                      const Matrix& y, const TrainOptions& opts);

/// Convenience overload with a fresh optimizer state.
TrainResult train_mlp(MlpModel& model, const Matrix& x, const Matrix& y,
                      const TrainOptions& opts);

} // namespace gwmlp
