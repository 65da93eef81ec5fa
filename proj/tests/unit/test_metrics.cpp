#include <doctest.h>

#include <cmath>
#include <vector>

#include "gwmlp/error.hpp"
#include "gwmlp/metrics.hpp"
#include "gwmlp/rng.hpp"
#include "test_support.hpp"

using namespace gwmlp;

namespace {

std::vector<double> random_vector(RngState& rng, std::size_t n, double spread) {
  std::vector<double> v(n);
  for (double& x : v) x = spread * rng.next_normal();
  return v;
}

} // namespace

TEST_SUITE("metrics") {

TEST_CASE("perfect prediction scores zero error and r2 = 1") {
  const std::vector<double> obs = {1.5, -2.0, 4.0};
  CHECK(mse(obs, obs) == 0.0);
  CHECK(rmse(obs, obs) == 0.0);
  CHECK(mae(obs, obs) == 0.0);
  CHECK(r2(obs, obs) == 1.0);
}

TEST_CASE("hand-computed fixtures") {
  const std::vector<double> obs = {1, 2, 3};

  SUBCASE("pred 2,2,2") {
    const std::vector<double> pred = {2, 2, 2};
    CHECK(mse(pred, obs) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(rmse(pred, obs) == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
    CHECK(mae(pred, obs) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(r2(pred, obs) == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("pred 1,2,4") {
    const std::vector<double> pred = {1, 2, 4};
    CHECK(mse(pred, obs) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(mae(pred, obs) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(r2(pred, obs) == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("constant mean prediction has r2 exactly 0") {
    const std::vector<double> pred = {2, 2, 2};
    CHECK(r2(pred, obs) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("error paths") {
  const std::vector<double> a = {1, 2};
  const std::vector<double> longer = {1, 2, 3};
  const std::vector<double> empty;
  CHECK_THROWS_AS(mse(a, longer), ShapeError);
  CHECK_THROWS_AS(mse(empty, empty), DataError);
  CHECK_THROWS_AS(mae(empty, empty), DataError);

  const std::vector<double> flat = {5, 5, 5};
  const std::vector<double> two_flat = {3, 3};
  CHECK_THROWS_AS(r2(a, two_flat), DataError); // zero-variance obs
  CHECK_THROWS_AS(r2(flat, flat), DataError);
}

TEST_CASE("rmse^2 equals mse and mae <= rmse on random vectors") {
  RngState rng(4242);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + rng.next_u64() % 30;
    const auto pred = random_vector(rng, n, 3.0);
    const auto obs = random_vector(rng, n, 3.0);
    const double m = mse(pred, obs);
    const double r = rmse(pred, obs);
    CHECK(std::fabs(r * r - m) <= 1e-12 * std::max(1.0, m));
    CHECK(mae(pred, obs) <= r + 1e-15);
  }
}

TEST_CASE("translation invariance") {
  RngState rng(31337);
  const auto pred0 = random_vector(rng, 50, 2.0);
  const auto obs0 = random_vector(rng, 50, 2.0);
  const double c = 1234.5;
  std::vector<double> pred = pred0, obs = obs0;
  for (double& v : pred) v += c;
  for (double& v : obs) v += c;

  CHECK(mse(pred, obs) == doctest::Approx(mse(pred0, obs0)).epsilon(1e-9));
  CHECK(mae(pred, obs) == doctest::Approx(mae(pred0, obs0)).epsilon(1e-9));
  CHECK(std::fabs(r2(pred, obs) - r2(pred0, obs0)) < 1e-9);
}

TEST_CASE("paired permutation invariance") {
  RngState rng(99);
  const auto pred = random_vector(rng, 20, 1.0);
  const auto obs = random_vector(rng, 20, 1.0);
  std::vector<double> pred_rev(pred.rbegin(), pred.rend());
  std::vector<double> obs_rev(obs.rbegin(), obs.rend());
  CHECK(mse(pred_rev, obs_rev) == doctest::Approx(mse(pred, obs)).epsilon(1e-15));
  CHECK(mae(pred_rev, obs_rev) == doctest::Approx(mae(pred, obs)).epsilon(1e-15));
  CHECK(r2(pred_rev, obs_rev) == doctest::Approx(r2(pred, obs)).epsilon(1e-15));
}

namespace {

// y = x.w + b exactly, so an exact linear model exists in scaled space.
struct LinearFixture {
  Dataset train_scaled;
  Dataset test_scaled;
  Scaler scaler;
  Dataset train_raw;
  Dataset test_raw;
};

LinearFixture make_linear_fixture() {
  RngState rng(2025);
  Dataset ds;
  ds.x = rng_standard_normal(rng, 12, 2);
  ds.y = Matrix(12, 1);
  for (std::size_t i = 0; i < 12; ++i) {
    ds.y(i, 0) = 3.0 * ds.x(i, 0) - 2.0 * ds.x(i, 1) + 7.0;
    ds.timestamps.push_back({2000, 1 + static_cast<int>(i % 12)});
  }
  ds.feature_names = {"a", "b"};

  LinearFixture fx;
  const SplitResult split = split_dataset(ds, 0.75, SplitMode::Chronological, 1);
  fx.train_raw = split.train;
  fx.test_raw = split.test;
  fx.scaler = fit_scaler(split.train, ScalerKind::Zscore);
  fx.train_scaled = apply_scaler(fx.scaler, split.train);
  fx.test_scaled = apply_scaler(fx.scaler, split.test);
  return fx;
}

} // namespace

TEST_CASE("evaluate_model on an exactly matching model") {
  const LinearFixture fx = make_linear_fixture();

  // translate y = 3a - 2b + 7 into scaled coordinates
  const double sy = fx.scaler.target.b, my = fx.scaler.target.a;
  const double sa = fx.scaler.features[0].b, ma = fx.scaler.features[0].a;
  const double sb = fx.scaler.features[1].b, mb = fx.scaler.features[1].a;

  MlpModel model;
  model.layer_sizes = {2, 1};
  model.output_activation = Activation::Linear;
  model.weights.push_back(
      Matrix::from_rows({{3.0 * sa / sy}, {-2.0 * sb / sy}}));
  model.biases.push_back(
      Matrix::from_rows({{(3.0 * ma - 2.0 * mb + 7.0 - my) / sy}}));

  const MetricsReport report =
      evaluate_model(model, fx.scaler, fx.train_scaled, fx.test_scaled);
  for (const auto& row : report.rows) {
    CHECK(row.rmse <= 1e-9);
    CHECK(row.r2 >= 1.0 - 1e-12);
  }
  CHECK(report.total().n == report.train().n + report.test().n);
}

TEST_CASE("evaluate_model constant predictor at the global mean has total r2 ~ 0") {
  const LinearFixture fx = make_linear_fixture();

  double mean_total = 0.0;
  for (double v : fx.train_raw.y.values()) mean_total += v;
  for (double v : fx.test_raw.y.values()) mean_total += v;
  mean_total /= static_cast<double>(fx.train_raw.y.rows() + fx.test_raw.y.rows());

  // zero weights; bias set so the inverted constant equals the global mean
  MlpModel model;
  model.layer_sizes = {2, 1};
  model.output_activation = Activation::Linear;
  model.weights.push_back(Matrix(2, 1));
  model.biases.push_back(Matrix::from_rows(
      {{(mean_total - fx.scaler.target.a) / fx.scaler.target.b}}));

  const MetricsReport report =
      evaluate_model(model, fx.scaler, fx.train_scaled, fx.test_scaled);
  CHECK(std::fabs(report.total().r2) < 1e-9);
}

TEST_CASE("report csv writes the declared schema and round-trips") {
  const std::string dir = test::fresh_dir("unit_report_csv");
  MetricsReport report;
  report.rows[0] = {"train", 8, 0.5, 0.25, 0.25, 0.9};
  report.rows[1] = {"test", 2, 0.7, 0.5, 0.49, 0.8};
  report.rows[2] = {"total", 10, 0.55, 0.3, 0.3025, 0.88};
  report.fingerprint = "00ff00ff00ff00ff";
  write_report_csv(report, dir + "report.csv");

  const std::string text = test::read_file(dir + "report.csv");
  CHECK(text.rfind("label,n,rmse,mae,mse,r2\n", 0) == 0);

  const test::ParsedReport parsed = test::parse_report_csv(dir + "report.csv");
  CHECK(parsed.fingerprint == "00ff00ff00ff00ff");
  CHECK(parsed.rows.at("train").n == 8);
  CHECK(parsed.rows.at("total").r2 == doctest::Approx(0.88).epsilon(1e-15));
}

TEST_CASE("table rendering mirrors the column order") {
  MetricsReport report;
  report.rows[0] = {"train", 8, 0.6211, 0.4608, 0.3858, 0.9102};
  report.rows[1] = {"test", 2, 0.8412, 0.7203, 0.7076, 0.8751};
  report.rows[2] = {"total", 10, 0.6704, 0.5127, 0.4494, 0.9031};
  const std::string table = render_report_table(report);
  CHECK(table.rfind("RMSE", 0) == 0);
  CHECK(table.find("R^2") != std::string::npos);
  CHECK(table.find("Train") != std::string::npos);
  CHECK(table.find("80%") != std::string::npos);
  CHECK(table.find("0.9031") != std::string::npos);
}

} // TEST_SUITE
