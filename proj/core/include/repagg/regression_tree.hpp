#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "repagg/feature_matrix.hpp"

namespace repagg {

struct TreeParams {
  std::size_t min_leaf = 5;
  std::size_t max_depth = 12;
};

/// CART regression tree grown greedily by weighted variance reduction.
///
/// Candidate thresholds are midpoints between consecutive distinct values of
/// a feature; a row goes left when its value is <= threshold. Ties in the
/// reduction prefer the lowest feature index, then the lowest threshold.
class RegressionTree {
 public:
  struct Node {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    std::size_t left = 0;
    std::size_t right = 0;
    double value = 0.0;  // mean target of the rows reaching this node
    std::size_t count = 0;
    std::size_t depth = 0;

    bool is_leaf() const noexcept { return feature < 0; }
  };

  static RegressionTree fit(const FeatureMatrix& x, std::span<const double> y,
                            const TreeParams& params = {});

  double predict(std::span<const double> row) const { return nodes_[leaf_for(row)].value; }
  /// Index into nodes() of the leaf reached by `row`.
  std::size_t leaf_for(std::span<const double> row) const;

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  std::size_t leaf_count() const noexcept;
  std::size_t depth() const noexcept;

 private:
  std::vector<Node> nodes_;
};

}  // namespace repagg
