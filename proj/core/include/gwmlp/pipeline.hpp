#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gwmlp/config.hpp"
#include "gwmlp/data.hpp"
#include "gwmlp/metrics.hpp"
#include "gwmlp/model_io.hpp"

namespace gwmlp {

/// Everything reconstructible from a config: ingested series, supervised
/// dataset, split, scaler, scaled partitions and the run fingerprint.
struct PipelineData {
  std::vector<WellSeries> wells;
  ClimateSeries climate;
  AggregateSeries aggregate;
  Dataset supervised;
  SplitResult split;
  Scaler scaler;
  Dataset train_scaled;
  Dataset test_scaled;
  std::string fingerprint;
};

PipelineData prepare_data(const RunConfig& config);

/// ingest -> aggregate -> window -> split -> scale -> init -> train ->
/// evaluate -> persist. Writes the model file and report CSV, logs the loss
/// every 100 epochs and ends with a one-line summary on `log`.
MetricsReport run_train(const RunConfig& config, std::ostream& log);

/// Re-derives the data from the config, evaluates the stored model and
/// writes/prints the three-row report without modifying the model.
MetricsReport run_evaluate(const RunConfig& config, const std::string& model_path,
                           const std::string& report_path, std::ostream& log);

struct PredictedMonth {
  MonthDate date;
  double level_masl = 0.0;
};

/// Recursive multi-step forecast: each predicted level feeds the lag
/// features of the next month. Future temperature/precipitation must be
/// present in the climate CSV; the artifact refuses to extrapolate weather.
std::vector<PredictedMonth> run_predict(const RunConfig& config,
                                        const std::string& model_path,
                                        std::size_t horizon,
                                        const std::string& out_path);

/// Observed vs simulated series over the full supervised range, CSV columns
/// `date,observed,predicted,partition`, chronological order.
void run_export_plot(const RunConfig& config, const std::string& model_path,
                     const std::string& out_path);

} // namespace gwmlp
