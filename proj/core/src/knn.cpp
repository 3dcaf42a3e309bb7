#include "repagg/knn.hpp"

#include <algorithm>
#include <utility>

#include "repagg/error.hpp"

namespace repagg {

KnnRegressor KnnRegressor::fit(FeatureMatrix x, std::vector<double> y, std::size_t k) {
  if (x.rows() == 0) throw EmptyInputError("KNN needs at least one training row");
  if (y.size() != x.rows()) throw ConfigError("feature and target counts differ");
  if (k < 1) throw ConfigError("knn_k must be >= 1");
  KnnRegressor model;
  model.x_ = std::move(x);
  model.y_ = std::move(y);
  model.k_ = k;
  return model;
}

std::vector<std::size_t> KnnRegressor::neighbours(std::span<const double> row) const {
  std::vector<std::pair<double, std::size_t>> dist(x_.rows());
  for (std::size_t i = 0; i < x_.rows(); ++i) {
    const auto xi = x_.row(i);
    double d2 = 0.0;
    for (std::size_t j = 0; j < xi.size(); ++j) {
      const double d = xi[j] - row[j];
      d2 += d * d;
    }
    dist[i] = {d2, i};
  }
  const std::size_t k = std::min(k_, dist.size());
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
  std::vector<std::size_t> out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = dist[i].second;
  return out;
}

double KnnRegressor::predict(std::span<const double> row) const {
  const auto ids = neighbours(row);
  double sum = 0.0;
  for (std::size_t id : ids) sum += y_[id];
  return sum / static_cast<double>(ids.size());
}

}  // namespace repagg
