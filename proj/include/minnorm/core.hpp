#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace minnorm {

namespace detail {

inline void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

inline bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double e) { return std::isfinite(e); });
}

}  // namespace detail

/// Dense row-major matrix of doubles. Instances are immutable after
/// construction; construction rejects empty shapes, size mismatches and
/// non-finite entries, so downstream code never re-validates.
class DenseMatrix {
 public:
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    detail::require(rows_ > 0 && cols_ > 0, "DenseMatrix: dimensions must be positive");
    detail::require(data_.size() == rows_ * cols_,
                    "DenseMatrix: entry count must equal rows * cols");
    detail::require(detail::all_finite(data_), "DenseMatrix: entries must be finite");
  }

  static DenseMatrix identity(std::size_t n) {
    std::vector<double> e(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
    return {n, n, std::move(e)};
  }

  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t m = rows.size();
    const std::size_t n = m == 0 ? 0 : rows.begin()->size();
    std::vector<double> e;
    e.reserve(m * n);
    for (const auto& row : rows) {
      detail::require(row.size() == n, "DenseMatrix: ragged row list");
      e.insert(e.end(), row.begin(), row.end());
    }
    return {m, n, std::move(e)};
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  std::span<const double> entries() const { return data_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

/// A coefficient matrix together with its right-hand side.
class LinearSystem {
 public:
  LinearSystem(DenseMatrix matrix, std::vector<double> rhs)
      : matrix_(std::move(matrix)), rhs_(std::move(rhs)) {
    detail::require(rhs_.size() == matrix_.rows(),
                    "LinearSystem: rhs length must equal row count");
    detail::require(detail::all_finite(rhs_), "LinearSystem: rhs entries must be finite");
  }

  const DenseMatrix& matrix() const { return matrix_; }
  const std::vector<double>& rhs() const { return rhs_; }
  std::size_t rows() const { return matrix_.rows(); }
  std::size_t cols() const { return matrix_.cols(); }

 private:
  DenseMatrix matrix_;
  std::vector<double> rhs_;
};

inline double dot(std::span<const double> a, std::span<const double> b) {
  detail::require(a.size() == b.size(), "dot: length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

inline double norm1(std::span<const double> v) {
  double sum = 0.0;
  for (double e : v) sum += std::abs(e);
  return sum;
}

inline double norm2(std::span<const double> v) {
  double sum = 0.0;
  for (double e : v) sum += e * e;
  return std::sqrt(sum);
}

inline double norm_inf(std::span<const double> v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::abs(e));
  return m;
}

inline double inf_norm_diff(std::span<const double> a, std::span<const double> b) {
  detail::require(a.size() == b.size(), "inf_norm_diff: length mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline std::vector<double> matvec(const DenseMatrix& a, std::span<const double> x) {
  detail::require(x.size() == a.cols(), "matvec: vector length must equal column count");
  std::vector<double> y(a.rows());
  for (std::size_t m = 0; m < a.rows(); ++m) y[m] = dot(a.row(m), x);
  return y;
}

inline std::vector<double> matvec_transpose(const DenseMatrix& a, std::span<const double> y) {
  detail::require(y.size() == a.rows(), "matvec_transpose: vector length must equal row count");
  std::vector<double> x(a.cols(), 0.0);
  for (std::size_t m = 0; m < a.rows(); ++m) {
    const double ym = y[m];
    const auto row = a.row(m);
    for (std::size_t n = 0; n < a.cols(); ++n) x[n] += row[n] * ym;
  }
  return x;
}

inline DenseMatrix transpose(const DenseMatrix& a) {
  std::vector<double> e(a.rows() * a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) e[c * a.rows() + r] = a(r, c);
  return {a.cols(), a.rows(), std::move(e)};
}

/// Defect of the system at x, computed as matvec(A, x) - b componentwise.
inline std::vector<double> residual(const LinearSystem& system, std::span<const double> x) {
  auto r = matvec(system.matrix(), x);
  const auto& b = system.rhs();
  for (std::size_t m = 0; m < r.size(); ++m) r[m] -= b[m];
  return r;
}

}  // namespace minnorm
