#include "gwmlp/pipeline.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "gwmlp/error.hpp"
#include "gwmlp/trainer.hpp"
#include "text_util.hpp"

namespace gwmlp {

namespace {

// Keeps weight-init and minibatch-shuffle streams distinct per run seed.
constexpr std::uint64_t kShuffleSalt = 0x9e3779b97f4a7c15ULL;

std::string read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string to_hex(std::uint64_t h) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// Canonical config rendering (output paths excluded) plus input file
/// hashes. Equal fingerprints imply byte-identical reports.
std::string compute_fingerprint(const RunConfig& cfg) {
  std::string canon;
  canon += "wells_csv=" + cfg.wells_csv + "\n";
  canon += "climate_csv=" + cfg.climate_csv + "\n";
  canon += "hidden_size=" + std::to_string(cfg.hidden_size) + "\n";
  canon += "output_activation=" + to_string(cfg.output_activation) + "\n";
  canon += "lags=" + std::to_string(cfg.lags) + "\n";
  canon += "optimizer=" + to_string(cfg.optimizer) + "\n";
  canon += "eta=" + detail::fmt_g17(cfg.eta) + "\n";
  canon += "beta1=" + detail::fmt_g17(cfg.beta1) + "\n";
  canon += "beta2=" + detail::fmt_g17(cfg.beta2) + "\n";
  canon += "epsilon=" + detail::fmt_g17(cfg.epsilon) + "\n";
  canon += "epochs=" + std::to_string(cfg.epochs) + "\n";
  canon += "batch=" + std::to_string(cfg.batch_size) + "\n";
  canon += "seed=" + std::to_string(cfg.seed) + "\n";
  canon += "split_fraction=" + detail::fmt_g17(cfg.split_fraction) + "\n";
  canon += "split_mode=" + to_string(cfg.split_mode) + "\n";
  canon += "scaling=" + to_string(cfg.scaling) + "\n";

  std::uint64_t h = detail::fnv1a64(canon);
  h = detail::fnv1a64(read_file_bytes(cfg.wells_csv), h);
  h = detail::fnv1a64(read_file_bytes(cfg.climate_csv), h);
  return to_hex(h);
}

/// Report fingerprints also cover the model file, so a report can only match
/// another report produced from the very same model bytes.
std::string report_fingerprint(const PipelineData& data, const std::string& model_path) {
  std::uint64_t h = detail::fnv1a64(data.fingerprint);
  h = detail::fnv1a64(read_file_bytes(model_path), h);
  return to_hex(h);
}

void check_model_compat(const MlpModel& model, const Dataset& ds) {
  if (model.input_size() != ds.x.cols()) {
    throw ConfigError("model expects " + std::to_string(model.input_size()) +
                      " input features but the configured data has " +
                      std::to_string(ds.x.cols()));
  }
  if (model.output_size() != 1) {
    throw ConfigError("model output width " + std::to_string(model.output_size()) +
                      " is not 1");
  }
}

} // namespace

PipelineData prepare_data(const RunConfig& config) {
  config.validate();

  PipelineData data;
  data.wells = load_wells_csv(config.wells_csv);
  data.climate = load_climate_csv(config.climate_csv);
  data.aggregate = aggregate_weighted(data.wells);
  data.supervised = build_supervised(data.climate, data.aggregate, config.lags);
  data.split = split_dataset(data.supervised, config.split_fraction,
                             config.split_mode, config.seed);
  data.scaler = fit_scaler(data.split.train, config.scaling);
  data.train_scaled = apply_scaler(data.scaler, data.split.train);
  data.test_scaled = apply_scaler(data.scaler, data.split.test);
  data.fingerprint = compute_fingerprint(config);
  return data;
}

MetricsReport run_train(const RunConfig& config, std::ostream& log) {
  PipelineData data = prepare_data(config);

  RngState rng(config.seed);
  const std::vector<std::size_t> sizes = {data.supervised.x.cols(),
                                          config.hidden_size, 1};
  MlpModel model = init_mlp(sizes, config.output_activation, rng);

  TrainOptions opts;
  opts.optimizer = config.optimizer;
  opts.hyper = AdamHyper{config.eta, config.beta1, config.beta2, config.epsilon};
  opts.epochs = config.epochs;
  opts.batch_size = config.batch_size;
  opts.shuffle_seed = config.seed ^ kShuffleSalt;
  opts.log_every = 100;
  opts.on_log = [&log](std::size_t epoch, double loss) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.8g", loss);
    log << "epoch " << epoch << " mse " << buf << '\n';
  };

  const TrainResult result =
      train_mlp(model, data.train_scaled.x, data.train_scaled.y, opts);

  MetricsReport report =
      evaluate_model(model, data.scaler, data.train_scaled, data.test_scaled);

  save_model(config.model_out, model);
  report.fingerprint = report_fingerprint(data, config.model_out);
  write_report_csv(report, config.report_out);

  char loss_buf[64], r2_buf[64];
  std::snprintf(loss_buf, sizeof loss_buf, "%.8g", result.final_loss);
  std::snprintf(r2_buf, sizeof r2_buf, "%.4f", report.total().r2);
  log << "trained model=" << config.model_out << " report=" << config.report_out
      << " fingerprint=" << report.fingerprint << " train_mse=" << loss_buf
      << " total_r2=" << r2_buf << '\n';
  return report;
}

MetricsReport run_evaluate(const RunConfig& config, const std::string& model_path,
                           const std::string& report_path, std::ostream& log) {
  PipelineData data = prepare_data(config);
  const MlpModel model = load_model(model_path);
  check_model_compat(model, data.supervised);

  MetricsReport report =
      evaluate_model(model, data.scaler, data.train_scaled, data.test_scaled);
  report.fingerprint = report_fingerprint(data, model_path);
  write_report_csv(report, report_path);
  log << render_report_table(report);
  return report;
}

std::vector<PredictedMonth> run_predict(const RunConfig& config,
                                        const std::string& model_path,
                                        std::size_t horizon,
                                        const std::string& out_path) {
  if (horizon == 0) {
    throw ConfigError("predict: horizon must be >= 1");
  }
  PipelineData data = prepare_data(config);
  const MlpModel model = load_model(model_path);
  check_model_compat(model, data.supervised);

  const std::size_t known = data.aggregate.levels.size();
  const std::size_t future = data.climate.timestamps.size() - known;
  if (future < horizon) {
    throw DataError("predict: need " + std::to_string(horizon) +
                    " future climate months after " +
                    to_string(data.aggregate.timestamps.back()) +
                    ", climate provides " + std::to_string(future));
  }

  // level_lag1 .. level_lagL, most recent first; predictions feed back in.
  std::vector<double> recent(config.lags);
  for (std::size_t l = 0; l < config.lags; ++l) {
    recent[l] = data.aggregate.levels[known - 1 - l];
  }

  std::vector<PredictedMonth> out;
  for (std::size_t h = 1; h <= horizon; ++h) {
    const std::size_t idx = known - 1 + h;
    Matrix features(1, 2 + config.lags);
    features(0, 0) = data.climate.temperature[idx];
    features(0, 1) = data.climate.precipitation[idx];
    for (std::size_t l = 0; l < config.lags; ++l) {
      features(0, 2 + l) = recent[l];
    }
    const Matrix pred_scaled =
        mlp_predict(model, scale_features(data.scaler, features));
    const double level = invert_target(data.scaler, pred_scaled)(0, 0);
    if (!std::isfinite(level)) {
      throw NumericError("predict: non-finite level at horizon " + std::to_string(h));
    }
    out.push_back({data.climate.timestamps[idx], level});

    for (std::size_t l = config.lags; l-- > 1;) recent[l] = recent[l - 1];
    recent[0] = level;
  }

  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    throw DataError("cannot write predictions '" + out_path + "'");
  }
  file << "date,predicted_level_masl\n";
  for (const auto& row : out) {
    file << to_string(row.date) << ',' << detail::fmt_g17(row.level_masl) << '\n';
  }
  if (!file) {
    throw DataError("failed writing predictions '" + out_path + "'");
  }
  return out;
}

void run_export_plot(const RunConfig& config, const std::string& model_path,
                     const std::string& out_path) {
  PipelineData data = prepare_data(config);
  const MlpModel model = load_model(model_path);
  check_model_compat(model, data.supervised);

  const Matrix pred = invert_target(
      data.scaler, mlp_predict(model, scale_features(data.scaler, data.supervised.x)));

  std::vector<const char*> partition(data.supervised.size(), "train");
  for (std::size_t i : data.split.test_indices) partition[i] = "test";

  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    throw DataError("cannot write plot data '" + out_path + "'");
  }
  file << "date,observed,predicted,partition\n";
  for (std::size_t i = 0; i < data.supervised.size(); ++i) {
    file << to_string(data.supervised.timestamps[i]) << ','
         << detail::fmt_g17(data.supervised.y(i, 0)) << ','
         << detail::fmt_g17(pred(i, 0)) << ',' << partition[i] << '\n';
  }
  if (!file) {
    throw DataError("failed writing plot data '" + out_path + "'");
  }
}

} // namespace gwmlp
