#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace gwmlp {

/// Dense 2-D array of doubles, row-major. Carrier for weights, activations
/// and gradients. All public operations keep entries finite and accumulate
/// sums in a fixed left-to-right order, so results are bitwise reproducible.
class Matrix {
public:
  Matrix() = default; // 0x0 empty sentinel
  Matrix(std::size_t rows, std::size_t cols);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }

  bool same_shape(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }
  bool all_finite() const;

  /// "RxC" rendering used in shape-error messages.
  std::string shape_str() const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Standard matrix product with fixed left-to-right accumulation over the
/// inner index, so the result is bitwise deterministic.
Matrix mat_mul(const Matrix& a, const Matrix& b);

Matrix mat_transpose(const Matrix& a);

/// result[i][j] = a[i][j] + bias[0][j]; bias must be a single row.
Matrix add_row_broadcast(const Matrix& a, const Matrix& bias);

Matrix add(const Matrix& a, const Matrix& b);
Matrix sub(const Matrix& a, const Matrix& b);
Matrix hadamard(const Matrix& a, const Matrix& b);
Matrix scaled(const Matrix& a, double factor);
Matrix map(const Matrix& a, double (*fn)(double));

/// Column sums collapsed to a 1xC row.
Matrix col_sum(const Matrix& a);

/// New matrix holding the selected rows of a, in the given order.
Matrix take_rows(const Matrix& a, std::span<const std::size_t> indices);

} // namespace gwmlp
