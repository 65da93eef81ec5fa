#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "gwmlp/matrix.hpp"

namespace gwmlp {

/// Calendar month, the time resolution of all series ("YYYY-MM").
struct MonthDate {
  int year = 0;
  int month = 1; // 1..12

  auto operator<=>(const MonthDate&) const = default;

  MonthDate next() const {
    return month == 12 ? MonthDate{year + 1, 1} : MonthDate{year, month + 1};
  }
};

MonthDate parse_month(const std::string& text);
std::string to_string(const MonthDate& d);

/// One observation well: monthly levels in meters above sea level plus the
/// impact weight used by the aggregation step.
struct WellSeries {
  std::string well_id;
  std::vector<MonthDate> timestamps;
  std::vector<double> levels;
  double weight = 0.0;
};

struct ClimateSeries {
  std::vector<MonthDate> timestamps;
  std::vector<double> temperature;   // deg C
  std::vector<double> precipitation; // mm/month
};

/// Supervised examples: x is N x F, y is N x 1, timestamps holds the target
/// month of each row.
struct Dataset {
  Matrix x;
  Matrix y;
  std::vector<MonthDate> timestamps;
  std::vector<std::string> feature_names;

  std::size_t size() const { return x.rows(); }
};

enum class ScalerKind { Zscore, Minmax };

std::string to_string(ScalerKind k);
ScalerKind scaler_kind_from_string(const std::string& s);

/// Per-column statistics fitted on the train partition only.
/// zscore: a = mean, b = population std. minmax: a = min, b = max.
struct Scaler {
  ScalerKind kind = ScalerKind::Zscore;
  struct ColumnStats {
    double a = 0.0;
    double b = 1.0;
  };
  std::vector<ColumnStats> features;
  ColumnStats target;
};

/// Wells CSV: header `well_id,date,level_masl,weight`, dates YYYY-MM,
/// weight constant per well. Rows may interleave wells; each series comes
/// back sorted by timestamp, wells ordered by id. Gapped or duplicated
/// months are an error, not interpolated.
std::vector<WellSeries> load_wells_csv(const std::string& path);

/// Climate CSV: header `date,temp_c,precip_mm`, one row per month, no gaps.
ClimateSeries load_climate_csv(const std::string& path);

struct AggregateSeries {
  std::vector<MonthDate> timestamps;
  std::vector<double> levels;
};

/// Weighted mean across wells per month: sum_i w_i*level_i / sum_i w_i.
/// All wells must share one timestamp grid and weights must not all be zero.
AggregateSeries aggregate_weighted(const std::vector<WellSeries>& wells);

/// Windowing: for each t >= lags the row is
///   features = [temp_t, precip_t, level_{t-1}, ..., level_{t-lags}]
///   target   = level_t
/// The aggregate grid must be a leading slice of the climate grid; climate
/// may extend further into the future (those months feed predictions).
Dataset build_supervised(const ClimateSeries& climate, const AggregateSeries& agg,
                         std::size_t lags);

enum class SplitMode { Chronological, Random };

std::string to_string(SplitMode m);
SplitMode split_mode_from_string(const std::string& s);

/// Row partition of a dataset. Indices refer to rows of the input dataset
/// and witness that train and test are disjoint and complete.
struct SplitResult {
  Dataset train;
  Dataset test;
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> test_indices;
};

/// Chronological (default): first floor(fraction*N) rows train, rest test,
/// order preserved. Random: seeded permutation, then the same cut.
SplitResult split_dataset(const Dataset& ds, double fraction, SplitMode mode,
                          std::uint64_t seed);

/// Statistics come from the given (train) partition only; no test leakage.
Scaler fit_scaler(const Dataset& train, ScalerKind kind);

Dataset apply_scaler(const Scaler& s, const Dataset& ds);
Matrix scale_features(const Scaler& s, const Matrix& x);
Matrix scale_target(const Scaler& s, const Matrix& y);

/// Exact algebraic inverse of scale_target.
Matrix invert_target(const Scaler& s, const Matrix& y_scaled);

} // namespace gwmlp
