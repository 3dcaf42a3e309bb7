#pragma once

#include <span>
#include <vector>

#include "repagg/feature_matrix.hpp"

namespace repagg {

/// Ordinary least squares with an intercept, solved through the normal
/// equations. A rank-deficient system is retried with `ridge_jitter` added
/// to the diagonal.
class LinearRegression {
 public:
  static LinearRegression fit(const FeatureMatrix& x, std::span<const double> y,
                              double ridge_jitter = 1e-8);

  double predict(std::span<const double> row) const;

  double intercept() const noexcept { return intercept_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  bool jittered() const noexcept { return jittered_; }

 private:
  double intercept_ = 0.0;
  std::vector<double> weights_;
  bool jittered_ = false;
};

}  // namespace repagg
