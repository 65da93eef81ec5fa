#include "gwmlp/data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "gwmlp/error.hpp"
#include "gwmlp/rng.hpp"
#include "text_util.hpp"

namespace gwmlp {

using detail::split;
using detail::trim;

MonthDate parse_month(const std::string& text) {
  // strict YYYY-MM
  if (text.size() != 7 || text[4] != '-') {
    throw DataError("invalid date '" + text + "' (expected YYYY-MM)");
  }
  for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u}) {
    if (text[i] < '0' || text[i] > '9') {
      throw DataError("invalid date '" + text + "' (expected YYYY-MM)");
    }
  }
  MonthDate d;
  d.year = std::stoi(text.substr(0, 4));
  d.month = std::stoi(text.substr(5, 2));
  if (d.month < 1 || d.month > 12) {
    throw DataError("invalid date '" + text + "' (month out of range)");
  }
  return d;
}

std::string to_string(const MonthDate& d) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%04d-%02d", d.year, d.month);
  return buf;
}

std::string to_string(ScalerKind k) {
  return k == ScalerKind::Zscore ? "zscore" : "minmax";
}

ScalerKind scaler_kind_from_string(const std::string& s) {
  if (s == "zscore") return ScalerKind::Zscore;
  if (s == "minmax") return ScalerKind::Minmax;
  throw ConfigError("unknown scaling '" + s + "' (expected zscore or minmax)");
}

std::string to_string(SplitMode m) {
  return m == SplitMode::Chronological ? "chronological" : "random";
}

SplitMode split_mode_from_string(const std::string& s) {
  if (s == "chronological") return SplitMode::Chronological;
  if (s == "random") return SplitMode::Random;
  throw ConfigError("unknown split_mode '" + s + "' (expected chronological or random)");
}

namespace {

double parse_number(const std::string& token, const std::string& file,
                    std::size_t line_no, const char* column) {
  const std::string t = trim(token);
  if (t.empty()) {
    throw DataError(file + " line " + std::to_string(line_no) + ": empty " + column);
  }
  const char* begin = t.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end != begin + t.size()) {
    throw DataError(file + " line " + std::to_string(line_no) + ": invalid " +
                    column + " '" + t + "'");
  }
  if (!std::isfinite(value)) {
    throw DataError(file + " line " + std::to_string(line_no) + ": non-finite " +
                    column);
  }
  return value;
}

void check_header(const std::vector<std::string>& got,
                  const std::vector<std::string>& expected, const std::string& file) {
  for (const auto& col : expected) {
    if (std::find(got.begin(), got.end(), col) == got.end()) {
      throw DataError(file + ": missing column '" + col + "'");
    }
  }
  for (const auto& col : got) {
    if (std::find(expected.begin(), expected.end(), col) == expected.end()) {
      throw DataError(file + ": unexpected column '" + col + "'");
    }
  }
  if (got != expected) {
    throw DataError(file + ": columns must be ordered " +
                    [&] {
                      std::string s;
                      for (const auto& c : expected) s += (s.empty() ? "" : ",") + c;
                      return s;
                    }());
  }
}

std::vector<std::string> read_csv_header(std::ifstream& in, const std::string& file,
                                         const std::vector<std::string>& expected) {
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError(file + ": empty file");
  }
  auto cols = split(line, ',');
  for (auto& c : cols) c = trim(c);
  check_header(cols, expected, file);
  return cols;
}

} // namespace

std::vector<WellSeries> load_wells_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open wells csv '" + path + "'");
  }
  read_csv_header(in, path, {"well_id", "date", "level_masl", "weight"});

  struct Row {
    MonthDate date;
    double level;
    double weight;
  };
  std::map<std::string, std::vector<Row>> by_well;

  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 4) {
      throw DataError(path + " line " + std::to_string(line_no) +
                      ": expected 4 fields, got " + std::to_string(fields.size()));
    }
    const std::string well_id = trim(fields[0]);
    if (well_id.empty()) {
      throw DataError(path + " line " + std::to_string(line_no) + ": empty well_id");
    }
    Row row;
    try {
      row.date = parse_month(trim(fields[1]));
    } catch (const DataError& e) {
      throw DataError(path + " line " + std::to_string(line_no) + ": " + e.what());
    }
    row.level = parse_number(fields[2], path, line_no, "level_masl");
    row.weight = parse_number(fields[3], path, line_no, "weight");
    if (row.weight < 0.0) {
      throw DataError(path + " line " + std::to_string(line_no) +
                      ": negative weight for well " + well_id);
    }
    by_well[well_id].push_back(row);
  }
  if (by_well.empty()) {
    throw DataError(path + ": no data rows");
  }

  std::vector<WellSeries> wells;
  for (auto& [id, rows] : by_well) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.date < b.date; });
    WellSeries ws;
    ws.well_id = id;
    ws.weight = rows.front().weight;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].weight != ws.weight) {
        throw DataError("well " + id + ": weight differs between rows (" +
                        detail::fmt_g17(ws.weight) + " vs " +
                        detail::fmt_g17(rows[i].weight) + ")");
      }
      if (i > 0) {
        if (rows[i].date == rows[i - 1].date) {
          throw DataError("well " + id + ": duplicate month " +
                          to_string(rows[i].date));
        }
        if (rows[i].date != rows[i - 1].date.next()) {
          throw DataError("well " + id + ": gap after " +
                          to_string(rows[i - 1].date));
        }
      }
      ws.timestamps.push_back(rows[i].date);
      ws.levels.push_back(rows[i].level);
    }
    wells.push_back(std::move(ws));
  }
  return wells;
}

ClimateSeries load_climate_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open climate csv '" + path + "'");
  }
  read_csv_header(in, path, {"date", "temp_c", "precip_mm"});

  ClimateSeries cs;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 3) {
      throw DataError(path + " line " + std::to_string(line_no) +
                      ": expected 3 fields, got " + std::to_string(fields.size()));
    }
    MonthDate date;
    try {
      date = parse_month(trim(fields[0]));
    } catch (const DataError& e) {
      throw DataError(path + " line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!cs.timestamps.empty()) {
      if (date == cs.timestamps.back()) {
        throw DataError(path + ": duplicate month " + to_string(date));
      }
      if (date != cs.timestamps.back().next()) {
        throw DataError(path + ": gap or disorder after " +
                        to_string(cs.timestamps.back()));
      }
    }
    cs.timestamps.push_back(date);
    cs.temperature.push_back(parse_number(fields[1], path, line_no, "temp_c"));
    cs.precipitation.push_back(parse_number(fields[2], path, line_no, "precip_mm"));
  }
  if (cs.timestamps.empty()) {
    throw DataError(path + ": no data rows");
  }
  return cs;
}

AggregateSeries aggregate_weighted(const std::vector<WellSeries>& wells) {
  if (wells.empty()) {
    throw DataError("aggregate_weighted: no wells");
  }
  const auto& grid = wells.front().timestamps;
  double weight_sum = 0.0;
  for (const auto& w : wells) {
    if (w.timestamps != grid) {
      throw DataError("aggregate_weighted: well " + w.well_id +
                      " timestamp grid differs from well " + wells.front().well_id);
    }
    weight_sum += w.weight;
  }
  if (!(weight_sum > 0.0)) {
    throw ConfigError("aggregate_weighted: all well weights are zero");
  }

  AggregateSeries agg;
  agg.timestamps = grid;
  agg.levels.resize(grid.size(), 0.0);
  for (std::size_t t = 0; t < grid.size(); ++t) {
    double acc = 0.0;
    for (const auto& w : wells) acc += w.weight * w.levels[t];
    agg.levels[t] = acc / weight_sum;
  }
  return agg;
}

Dataset build_supervised(const ClimateSeries& climate, const AggregateSeries& agg,
                         std::size_t lags) {
  if (lags == 0) {
    throw ConfigError("build_supervised: lags must be >= 1");
  }
  const std::size_t len = agg.timestamps.size();
  if (climate.timestamps.size() < len) {
    throw DataError("build_supervised: climate series is shorter than the well series");
  }
  for (std::size_t i = 0; i < len; ++i) {
    if (climate.timestamps[i] != agg.timestamps[i]) {
      throw DataError("build_supervised: misaligned grids at index " +
                      std::to_string(i) + " (" + to_string(climate.timestamps[i]) +
                      " vs " + to_string(agg.timestamps[i]) + ")");
    }
  }
  if (len <= lags) {
    throw DataError("build_supervised: series too short (length " +
                    std::to_string(len) + " with " + std::to_string(lags) + " lags)");
  }

  const std::size_t n = len - lags;
  const std::size_t f = 2 + lags;
  Dataset ds;
  ds.x = Matrix(n, f);
  ds.y = Matrix(n, 1);
  ds.feature_names = {"temp_c", "precip_mm"};
  for (std::size_t l = 1; l <= lags; ++l) {
    ds.feature_names.push_back("level_lag" + std::to_string(l));
  }
  for (std::size_t t = lags; t < len; ++t) {
    const std::size_t row = t - lags;
    ds.x(row, 0) = climate.temperature[t];
    ds.x(row, 1) = climate.precipitation[t];
    for (std::size_t l = 1; l <= lags; ++l) {
      ds.x(row, 1 + l) = agg.levels[t - l];
    }
    ds.y(row, 0) = agg.levels[t];
    ds.timestamps.push_back(agg.timestamps[t]);
  }
  return ds;
}

namespace {

Dataset take_dataset_rows(const Dataset& ds, std::span<const std::size_t> indices) {
  Dataset out;
  out.x = take_rows(ds.x, indices);
  out.y = take_rows(ds.y, indices);
  out.feature_names = ds.feature_names;
  for (std::size_t i : indices) out.timestamps.push_back(ds.timestamps[i]);
  return out;
}

} // namespace

SplitResult split_dataset(const Dataset& ds, double fraction, SplitMode mode,
                          std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw ConfigError("split_dataset: fraction must be in (0,1)");
  }
  const std::size_t n = ds.size();
  if (n < 2) {
    throw ConfigError("split_dataset: need at least 2 rows, got " + std::to_string(n));
  }
  const auto n_train =
      static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n)));
  if (n_train == 0 || n_train == n) {
    throw ConfigError("split_dataset: fraction " + detail::fmt_g17(fraction) +
                      " leaves an empty partition for " + std::to_string(n) + " rows");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (mode == SplitMode::Random) {
    RngState rng(seed);
    for (std::size_t i = n - 1; i > 0; --i) {
      const std::size_t j = rng.next_u64() % (i + 1);
      std::swap(order[i], order[j]);
    }
  }

  SplitResult result;
  result.train_indices.assign(order.begin(), order.begin() + n_train);
  result.test_indices.assign(order.begin() + n_train, order.end());
  result.train = take_dataset_rows(ds, result.train_indices);
  result.test = take_dataset_rows(ds, result.test_indices);
  return result;
}

namespace {

Scaler::ColumnStats fit_column(std::span<const double> column, ScalerKind kind,
                               const std::string& name) {
  Scaler::ColumnStats stats;
  const double n = static_cast<double>(column.size());
  if (kind == ScalerKind::Zscore) {
    double sum = 0.0;
    for (double v : column) sum += v;
    const double mean = sum / n;
    double sq = 0.0;
    for (double v : column) sq += (v - mean) * (v - mean);
    const double stddev = std::sqrt(sq / n); // population std
    if (stddev == 0.0) {
      throw DataError("fit_scaler: column '" + name + "' has zero variance");
    }
    stats.a = mean;
    stats.b = stddev;
  } else {
    double lo = column[0], hi = column[0];
    for (double v : column) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (hi == lo) {
      throw DataError("fit_scaler: column '" + name + "' is constant");
    }
    stats.a = lo;
    stats.b = hi;
  }
  return stats;
}

std::vector<double> column_of(const Matrix& m, std::size_t j) {
  std::vector<double> col(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) col[i] = m(i, j);
  return col;
}

double scale_value(const Scaler& s, const Scaler::ColumnStats& st, double v) {
  return s.kind == ScalerKind::Zscore ? (v - st.a) / st.b : (v - st.a) / (st.b - st.a);
}

double invert_value(const Scaler& s, const Scaler::ColumnStats& st, double v) {
  return s.kind == ScalerKind::Zscore ? v * st.b + st.a : v * (st.b - st.a) + st.a;
}

} // namespace

Scaler fit_scaler(const Dataset& train, ScalerKind kind) {
  if (train.size() == 0) {
    throw DataError("fit_scaler: empty dataset");
  }
  Scaler s;
  s.kind = kind;
  for (std::size_t j = 0; j < train.x.cols(); ++j) {
    const auto col = column_of(train.x, j);
    s.features.push_back(fit_column(col, kind, train.feature_names[j]));
  }
  s.target = fit_column(column_of(train.y, 0), kind, "target");
  return s;
}

Matrix scale_features(const Scaler& s, const Matrix& x) {
  if (x.cols() != s.features.size()) {
    throw ShapeError("scale_features: " + std::to_string(x.cols()) +
                     " columns vs " + std::to_string(s.features.size()) +
                     " fitted columns");
  }
  Matrix out = x;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      out(i, j) = scale_value(s, s.features[j], x(i, j));
    }
  }
  return out;
}

Matrix scale_target(const Scaler& s, const Matrix& y) {
  if (y.cols() != 1) {
    throw ShapeError("scale_target: expected Bx1, got " + y.shape_str());
  }
  Matrix out = y;
  for (double& v : out.values()) v = scale_value(s, s.target, v);
  return out;
}

Matrix invert_target(const Scaler& s, const Matrix& y_scaled) {
  if (y_scaled.cols() != 1) {
    throw ShapeError("invert_target: expected Bx1, got " + y_scaled.shape_str());
  }
  Matrix out = y_scaled;
  for (double& v : out.values()) v = invert_value(s, s.target, v);
  return out;
}

Dataset apply_scaler(const Scaler& s, const Dataset& ds) {
  Dataset out;
  out.x = scale_features(s, ds.x);
  out.y = scale_target(s, ds.y);
  out.timestamps = ds.timestamps;
  out.feature_names = ds.feature_names;
  return out;
}

} // namespace gwmlp
