#pragma once

#include <array>
#include <span>
#include <string>

#include "gwmlp/data.hpp"
#include "gwmlp/network.hpp"

namespace gwmlp {

double mse(std::span<const double> pred, std::span<const double> obs);
double rmse(std::span<const double> pred, std::span<const double> obs);
double mae(std::span<const double> pred, std::span<const double> obs);

/// 1 - SS_res/SS_tot, SS_tot around the mean of obs over the evaluated
/// subset. obs must have nonzero variance.
double r2(std::span<const double> pred, std::span<const double> obs);

struct MetricsRow {
  std::string label; // train | test | total
  std::size_t n = 0;
  double rmse = 0.0;
  double mae = 0.0;
  double mse = 0.0;
  double r2 = 0.0;
};

/// Train / test / total rows plus the run fingerprint (config hash, seed and
/// input file hashes) recorded by the pipeline.
struct MetricsReport {
  std::array<MetricsRow, 3> rows;
  std::string fingerprint;

  const MetricsRow& train() const { return rows[0]; }
  const MetricsRow& test() const { return rows[1]; }
  const MetricsRow& total() const { return rows[2]; }
};

/// Evaluates a trained model on scaled train/test partitions. Predictions
/// and observations are inverted to original units (meters) before any
/// metric is computed. The total row concatenates train then test and uses
/// the concatenated mean for SS_tot.
MetricsReport evaluate_model(const MlpModel& model, const Scaler& scaler,
                             const Dataset& train_scaled, const Dataset& test_scaled);

/// CSV with header `label,n,rmse,mae,mse,r2`, full double precision, plus a
/// trailing `# fingerprint:` comment line.
void write_report_csv(const MetricsReport& report, const std::string& path);

/// Fixed-width text table, columns RMSE MAE MSE R^2 Amount Model.
std::string render_report_table(const MetricsReport& report);

} // namespace gwmlp
