#pragma once

#include <cstdint>
#include <string>

#include "gwmlp/data.hpp"
#include "gwmlp/network.hpp"
#include "gwmlp/trainer.hpp"

namespace gwmlp {

/// Run configuration, a flat `key = value` text file. Unknown or duplicate
/// keys are errors; there is no silent typo acceptance. Lines starting with
/// '#' and blank lines are skipped.
struct RunConfig {
  std::string wells_csv;   // required
  std::string climate_csv; // required
  std::size_t hidden_size = 500;
  Activation output_activation = Activation::Linear;
  std::size_t lags = 1;
  OptimizerKind optimizer = OptimizerKind::Adam;
  double eta = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::size_t epochs = 2000;
  std::size_t batch_size = 0; // 0 = full batch ("batch = full")
  std::uint64_t seed = 42;
  double split_fraction = 0.8;
  SplitMode split_mode = SplitMode::Chronological;
  ScalerKind scaling = ScalerKind::Zscore;
  std::string model_out = "model.mlp";
  std::string report_out = "report.csv";
  std::string plot_out = "plot.csv";

  /// Range checks plus the coupling rule: a relu output layer cannot emit
  /// negative values, so it requires minmax scaling of the target.
  void validate() const;
};

RunConfig parse_run_config(const std::string& path);

} // namespace gwmlp
