#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "repagg/feature_matrix.hpp"

namespace repagg {

/// k-nearest-neighbour regression: unweighted mean of the targets of the k
/// closest training rows under Euclidean distance. Equal distances prefer
/// the lower training row index. k larger than the training set uses every row.
class KnnRegressor {
 public:
  static KnnRegressor fit(FeatureMatrix x, std::vector<double> y, std::size_t k);

  double predict(std::span<const double> row) const;
  /// Training row indices of the neighbours of `row`, nearest first.
  std::vector<std::size_t> neighbours(std::span<const double> row) const;

  std::size_t k() const noexcept { return k_; }

 private:
  FeatureMatrix x_;
  std::vector<double> y_;
  std::size_t k_ = 5;
};

}  // namespace repagg
