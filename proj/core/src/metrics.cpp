#include "gwmlp/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "gwmlp/error.hpp"
#include "text_util.hpp"

namespace gwmlp {

namespace {

void require_pair(std::span<const double> pred, std::span<const double> obs) {
  if (pred.empty() || obs.empty()) {
    throw DataError("metrics: empty input");
  }
  if (pred.size() != obs.size()) {
    throw ShapeError("metrics: length mismatch " + std::to_string(pred.size()) +
                     " vs " + std::to_string(obs.size()));
  }
}

} // namespace

double mse(std::span<const double> pred, std::span<const double> obs) {
  require_pair(pred, obs);
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double r = pred[i] - obs[i];
    sum += r * r;
  }
  return sum / static_cast<double>(pred.size());
}

double rmse(std::span<const double> pred, std::span<const double> obs) {
  return std::sqrt(mse(pred, obs));
}

double mae(std::span<const double> pred, std::span<const double> obs) {
  require_pair(pred, obs);
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    sum += std::fabs(pred[i] - obs[i]);
  }
  return sum / static_cast<double>(pred.size());
}

double r2(std::span<const double> pred, std::span<const double> obs) {
  require_pair(pred, obs);
  double mean = 0.0;
  for (double v : obs) mean += v;
  mean /= static_cast<double>(obs.size());

  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    ss_res += (obs[i] - pred[i]) * (obs[i] - pred[i]);
    ss_tot += (obs[i] - mean) * (obs[i] - mean);
  }
  if (ss_tot == 0.0) {
    throw DataError("r2: observations have zero variance");
  }
  return 1.0 - ss_res / ss_tot;
}

namespace {

MetricsRow make_row(const std::string& label, std::span<const double> pred,
                    std::span<const double> obs) {
  MetricsRow row;
  row.label = label;
  row.n = obs.size();
  row.mse = mse(pred, obs);
  row.rmse = std::sqrt(row.mse);
  row.mae = mae(pred, obs);
  row.r2 = r2(pred, obs);
  return row;
}

std::vector<double> to_vector(const Matrix& column) {
  return {column.values().begin(), column.values().end()};
}

} // namespace

MetricsReport evaluate_model(const MlpModel& model, const Scaler& scaler,
                             const Dataset& train_scaled, const Dataset& test_scaled) {
  const auto pred_train =
      to_vector(invert_target(scaler, mlp_predict(model, train_scaled.x)));
  const auto pred_test =
      to_vector(invert_target(scaler, mlp_predict(model, test_scaled.x)));
  const auto obs_train = to_vector(invert_target(scaler, train_scaled.y));
  const auto obs_test = to_vector(invert_target(scaler, test_scaled.y));

  std::vector<double> pred_total = pred_train;
  pred_total.insert(pred_total.end(), pred_test.begin(), pred_test.end());
  std::vector<double> obs_total = obs_train;
  obs_total.insert(obs_total.end(), obs_test.begin(), obs_test.end());

  MetricsReport report;
  report.rows[0] = make_row("train", pred_train, obs_train);
  report.rows[1] = make_row("test", pred_test, obs_test);
  report.rows[2] = make_row("total", pred_total, obs_total);
  return report;
}

void write_report_csv(const MetricsReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DataError("cannot write report '" + path + "'");
  }
  out << "label,n,rmse,mae,mse,r2\n";
  for (const auto& row : report.rows) {
    out << row.label << ',' << row.n << ',' << detail::fmt_g17(row.rmse) << ','
        << detail::fmt_g17(row.mae) << ',' << detail::fmt_g17(row.mse) << ','
        << detail::fmt_g17(row.r2) << '\n';
  }
  out << "# fingerprint: " << report.fingerprint << '\n';
  if (!out) {
    throw DataError("failed writing report '" + path + "'");
  }
}

std::string render_report_table(const MetricsReport& report) {
  const char* labels[3] = {"Train", "Test", "Total"};
  const std::size_t total_n = report.total().n;
  std::string text = "RMSE      MAE       MSE       R^2       Amount   Model\n";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& row = report.rows[i];
    const double pct =
        100.0 * static_cast<double>(row.n) / static_cast<double>(total_n);
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-9.4f %-9.4f %-9.4f %-9.4f %3.0f%%     %s\n",
                  row.rmse, row.mae, row.mse, row.r2, pct, labels[i]);
    text += buf;
  }
  return text;
}

} // namespace gwmlp
