#include "repagg/linear_regression.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "repagg/error.hpp"

namespace repagg {

void FeatureMatrix::push_row(std::span<const double> values) {
  if (values.size() != cols_) {
    throw ConfigError("row has " + std::to_string(values.size()) + " values, expected " +
                      std::to_string(cols_));
  }
  data_.insert(data_.end(), values.begin(), values.end());
}

namespace {

// In-place Cholesky of a symmetric n x n matrix; nullopt when a pivot is not
// clearly positive relative to the largest diagonal entry.
std::optional<std::vector<double>> cholesky(std::vector<double> a, std::size_t n) {
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, a[i * n + i]);
  const double min_pivot = 1e-12 * std::max(1.0, max_diag);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
    if (!(d > min_pivot)) return std::nullopt;
    const double l = std::sqrt(d);
    a[j * n + j] = l;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = s / l;
    }
  }
  return a;
}

std::vector<double> cholesky_solve(const std::vector<double>& l, std::size_t n,
                                   std::vector<double> b) {
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l[i * n + k] * b[k];
    b[i] = s / l[i * n + i];
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= l[k * n + i] * b[k];
    b[i] = s / l[i * n + i];
  }
  return b;
}

}  // namespace

LinearRegression LinearRegression::fit(const FeatureMatrix& x, std::span<const double> y,
                                       double ridge_jitter) {
  const std::size_t rows = x.rows();
  if (rows == 0) throw EmptyInputError("linear regression needs at least one row");
  if (y.size() != rows) throw ConfigError("feature and target counts differ");

  // Augmented design [1, x]; normal matrix A = D'D and right side D'y.
  const std::size_t n = x.cols() + 1;
  std::vector<double> a(n * n, 0.0);
  std::vector<double> b(n, 0.0);
  std::vector<double> d(n);
  for (std::size_t r = 0; r < rows; ++r) {
    d[0] = 1.0;
    const auto xr = x.row(r);
    std::copy(xr.begin(), xr.end(), d.begin() + 1);
    for (std::size_t i = 0; i < n; ++i) {
      b[i] += d[i] * y[r];
      for (std::size_t j = 0; j <= i; ++j) a[i * n + j] += d[i] * d[j];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) a[i * n + j] = a[j * n + i];
  }

  LinearRegression model;
  auto factor = cholesky(a, n);
  if (!factor) {
    for (std::size_t i = 0; i < n; ++i) a[i * n + i] += ridge_jitter;
    factor = cholesky(a, n);
    model.jittered_ = true;
    if (!factor) throw InvariantError("normal equations singular even after ridge jitter");
  }
  const auto beta = cholesky_solve(*factor, n, b);
  model.intercept_ = beta[0];
  model.weights_.assign(beta.begin() + 1, beta.end());
  return model;
}

double LinearRegression::predict(std::span<const double> row) const {
  double value = intercept_;
  for (std::size_t i = 0; i < weights_.size(); ++i) value += weights_[i] * row[i];
  return value;
}

}  // namespace repagg
