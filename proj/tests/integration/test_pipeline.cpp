#include <doctest.h>

#include <cmath>
#include <sstream>

#include "gwmlp/error.hpp"
#include "gwmlp/pipeline.hpp"
#include "test_support.hpp"

using namespace gwmlp;
using test::fresh_dir;
using test::make_synthetic_aquifer;
using test::read_file;
using test::write_climate_csv;
using test::write_file;
using test::write_wells_csv;

namespace {

/// Small fixture + config: 60 months, 16 hidden units, 300 epochs.
RunConfig small_run(const std::string& dir, std::size_t extra_climate = 0) {
  const auto series = make_synthetic_aquifer(991, 60, extra_climate);
  write_wells_csv(dir + "wells.csv", series);
  write_climate_csv(dir + "climate.csv", series);

  RunConfig cfg;
  cfg.wells_csv = dir + "wells.csv";
  cfg.climate_csv = dir + "climate.csv";
  cfg.hidden_size = 16;
  cfg.epochs = 300;
  cfg.model_out = dir + "model.mlp";
  cfg.report_out = dir + "report.csv";
  cfg.plot_out = dir + "plot.csv";
  return cfg;
}

} // namespace

TEST_SUITE("pipeline") {

TEST_CASE("train writes model and report; reruns are byte-identical") {
  const std::string dir = fresh_dir("it_train_determinism");
  const RunConfig cfg = small_run(dir);

  std::ostringstream log1;
  const MetricsReport first = run_train(cfg, log1);
  const std::string model_bytes = read_file(cfg.model_out);
  const std::string report_bytes = read_file(cfg.report_out);

  CHECK(log1.str().find("trained model=") != std::string::npos);
  CHECK(log1.str().find("epoch 100 ") != std::string::npos);
  CHECK(first.total().n == 59); // 60 months, 1 lag

  std::ostringstream log2;
  run_train(cfg, log2);
  CHECK(read_file(cfg.model_out) == model_bytes);
  CHECK(read_file(cfg.report_out) == report_bytes);
}

TEST_CASE("evaluate after train reproduces the report byte-for-byte") {
  const std::string dir = fresh_dir("it_evaluate_matches");
  const RunConfig cfg = small_run(dir);

  std::ostringstream train_log;
  run_train(cfg, train_log);
  const std::string train_report = read_file(cfg.report_out);

  std::ostringstream eval_log;
  run_evaluate(cfg, cfg.model_out, dir + "report2.csv", eval_log);
  CHECK(read_file(dir + "report2.csv") == train_report);
  CHECK(eval_log.str().find("RMSE") != std::string::npos);
}

TEST_CASE("fingerprint tracks config and input changes") {
  const std::string dir = fresh_dir("it_fingerprint");
  RunConfig cfg = small_run(dir);
  const PipelineData base = prepare_data(cfg);

  SUBCASE("same inputs, same fingerprint") {
    const PipelineData again = prepare_data(cfg);
    CHECK(again.fingerprint == base.fingerprint);
  }
  SUBCASE("seed changes it") {
    cfg.seed = 43;
    CHECK(prepare_data(cfg).fingerprint != base.fingerprint);
  }
  SUBCASE("input file content changes it") {
    std::string climate = read_file(cfg.climate_csv);
    climate += "2005-01,12.0,33.0\n";
    write_file(cfg.climate_csv, climate);
    CHECK(prepare_data(cfg).fingerprint != base.fingerprint);
  }
  SUBCASE("output paths do not change it") {
    cfg.model_out = dir + "elsewhere.mlp";
    cfg.report_out = dir + "elsewhere.csv";
    CHECK(prepare_data(cfg).fingerprint == base.fingerprint);
  }
}

TEST_CASE("report fingerprint binds the evaluated model file") {
  const std::string dir = fresh_dir("it_fingerprint_model");
  RunConfig cfg = small_run(dir);
  std::ostringstream log;
  run_train(cfg, log);

  // a second model trained from another seed, evaluated under the SAME config
  RunConfig other = cfg;
  other.seed = 99;
  other.model_out = dir + "other.mlp";
  other.report_out = dir + "other_report.csv";
  run_train(other, log);

  std::ostringstream eval_log;
  const MetricsReport a = run_evaluate(cfg, cfg.model_out, dir + "ra.csv", eval_log);
  const MetricsReport b = run_evaluate(cfg, dir + "other.mlp", dir + "rb.csv", eval_log);
  CHECK(a.fingerprint != b.fingerprint);
  CHECK(read_file(dir + "ra.csv") != read_file(dir + "rb.csv"));
}

TEST_CASE("random split mode: a different seed changes report and fingerprint") {
  const std::string dir = fresh_dir("it_random_split");
  RunConfig cfg = small_run(dir);
  cfg.split_mode = SplitMode::Random;

  std::ostringstream log;
  run_train(cfg, log);
  std::ostringstream eval_log;
  const MetricsReport a = run_evaluate(cfg, cfg.model_out, dir + "ra.csv", eval_log);

  RunConfig reseeded = cfg;
  reseeded.seed = 4243;
  const MetricsReport b =
      run_evaluate(reseeded, cfg.model_out, dir + "rb.csv", eval_log);
  CHECK(a.fingerprint != b.fingerprint);
  CHECK(a.test().r2 != b.test().r2);
  CHECK(read_file(dir + "ra.csv") != read_file(dir + "rb.csv"));
}

TEST_CASE("model trained with different lags is rejected at evaluation") {
  const std::string dir = fresh_dir("it_width_mismatch");
  RunConfig cfg = small_run(dir);
  std::ostringstream log;
  run_train(cfg, log);

  cfg.lags = 2; // data now has 4 features; stored model expects 3
  std::ostringstream eval_log;
  CHECK_THROWS_AS(run_evaluate(cfg, cfg.model_out, dir + "r.csv", eval_log),
                  ConfigError);
}

TEST_CASE("predict recursion feeds each prediction into the next lag window") {
  const std::string dir = fresh_dir("it_predict_recursion");
  const RunConfig cfg = small_run(dir, 6);

  // hand-built linear model in scaled space: y = .4*lag1 + .1*temp - .2*precip + .05
  MlpModel model;
  model.layer_sizes = {3, 1};
  model.output_activation = Activation::Linear;
  model.weights.push_back(Matrix::from_rows({{0.1}, {-0.2}, {0.4}}));
  model.biases.push_back(Matrix::from_rows({{0.05}}));
  save_model(dir + "hand.mlp", model);

  const auto predictions = run_predict(cfg, dir + "hand.mlp", 2, dir + "pred.csv");
  REQUIRE(predictions.size() == 2);

  const PipelineData data = prepare_data(cfg);
  const std::size_t known = data.aggregate.levels.size();

  // month known+0: lag is the last observed level
  Matrix f1(1, 3);
  f1(0, 0) = data.climate.temperature[known];
  f1(0, 1) = data.climate.precipitation[known];
  f1(0, 2) = data.aggregate.levels[known - 1];
  const double p1 =
      invert_target(data.scaler,
                    mlp_predict(model, scale_features(data.scaler, f1)))(0, 0);
  CHECK(predictions[0].level_masl == p1);

  // month known+1: lag must be the first PREDICTION, not an observation
  Matrix f2(1, 3);
  f2(0, 0) = data.climate.temperature[known + 1];
  f2(0, 1) = data.climate.precipitation[known + 1];
  f2(0, 2) = p1;
  const double p2 =
      invert_target(data.scaler,
                    mlp_predict(model, scale_features(data.scaler, f2)))(0, 0);
  CHECK(predictions[1].level_masl == p2);

  CHECK(predictions[0].date == data.climate.timestamps[known]);
  CHECK(predictions[1].date == data.climate.timestamps[known + 1]);
}

TEST_CASE("constant model predicts a constant under constant recursion") {
  const std::string dir = fresh_dir("it_predict_constant");
  const RunConfig cfg = small_run(dir, 6);

  MlpModel model;
  model.layer_sizes = {3, 1};
  model.output_activation = Activation::Linear;
  model.weights.push_back(Matrix(3, 1));
  model.biases.push_back(Matrix::from_rows({{0.25}}));
  save_model(dir + "const.mlp", model);

  const auto predictions = run_predict(cfg, dir + "const.mlp", 3, dir + "pred.csv");
  REQUIRE(predictions.size() == 3);
  CHECK(predictions[0].level_masl == predictions[1].level_masl);
  CHECK(predictions[1].level_masl == predictions[2].level_masl);

  const std::string csv = read_file(dir + "pred.csv");
  CHECK(csv.rfind("date,predicted_level_masl\n", 0) == 0);
}

TEST_CASE("predict demands enough future climate months") {
  const std::string dir = fresh_dir("it_predict_short");
  const RunConfig cfg = small_run(dir, 1);
  std::ostringstream log;
  run_train(cfg, log);

  CHECK_THROWS_WITH_AS(run_predict(cfg, cfg.model_out, 3, dir + "pred.csv"),
                       doctest::Contains("need 3"), DataError);
  try {
    run_predict(cfg, cfg.model_out, 3, dir + "pred.csv");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("provides 1") != std::string::npos);
  }
}

TEST_CASE("export-plot covers the series with observed values and one switch") {
  const std::string dir = fresh_dir("it_export_plot");
  const RunConfig cfg = small_run(dir);
  std::ostringstream log;
  run_train(cfg, log);
  run_export_plot(cfg, cfg.model_out, cfg.plot_out);

  const std::string csv = read_file(cfg.plot_out);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "date,observed,predicted,partition");

  const PipelineData data = prepare_data(cfg);
  std::size_t rows = 0, switches = 0;
  std::string prev_partition;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    const auto last_comma = line.rfind(',');
    const std::string partition = line.substr(last_comma + 1);
    if (!prev_partition.empty() && partition != prev_partition) ++switches;
    prev_partition = partition;

    // observed column must equal the independently recomputed target series
    const auto first_comma = line.find(',');
    const auto second_comma = line.find(',', first_comma + 1);
    const double observed =
        std::stod(line.substr(first_comma + 1, second_comma - first_comma - 1));
    CHECK(observed == data.supervised.y(rows, 0));
    ++rows;
  }
  CHECK(rows == data.supervised.size());
  CHECK(switches == 1);
  CHECK(prev_partition == "test");
}

} // TEST_SUITE
