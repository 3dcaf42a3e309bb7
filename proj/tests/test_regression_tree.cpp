#include <gtest/gtest.h>

#include <random>

#include "repagg/feature_matrix.hpp"
#include "repagg/regression_tree.hpp"

namespace repagg {
namespace {

double sse(const std::vector<std::size_t>& rows, const std::vector<double>& y) {
  double mean = 0.0;
  for (auto i : rows) mean += y[i];
  mean /= static_cast<double>(rows.size());
  double s = 0.0;
  for (auto i : rows) s += (y[i] - mean) * (y[i] - mean);
  return s;
}

TEST(RegressionTree, ConstantTargetsSingleLeaf) {
  FeatureMatrix x(2);
  std::vector<double> y;
  for (int i = 0; i < 20; ++i) {
    x.push_row(std::vector<double>{i * 0.05, (i % 3) * 0.5});
    y.push_back(0.5);
  }
  const auto tree = RegressionTree::fit(x, y);
  EXPECT_EQ(tree.leaf_count(), 1u);
  EXPECT_DOUBLE_EQ(tree.predict(std::vector<double>{0.33, 0.9}), 0.5);
}

TEST(RegressionTree, LeafMean) {
  FeatureMatrix x(1);
  const std::vector<double> y = {0.1, 0.3, 0.8, 0.8};
  for (double v : {0.0, 0.0, 1.0, 1.0}) x.push_row(std::vector<double>{v});
  const auto tree = RegressionTree::fit(x, y, {2, 12});
  ASSERT_EQ(tree.leaf_count(), 2u);
  EXPECT_NEAR(tree.predict(std::vector<double>{0.0}), 0.2, 1e-15);
  EXPECT_DOUBLE_EQ(tree.nodes()[0].threshold, 0.5);
}

TEST(RegressionTree, StructuralProperties) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> grid(0, 6);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 20 + 15 * trial;
    const TreeParams params{1 + static_cast<std::size_t>(trial % 7), 3 + static_cast<std::size_t>(trial % 10)};
    FeatureMatrix x(3);
    std::vector<double> y;
    for (std::size_t i = 0; i < n; ++i) {
      const std::vector<double> row = {unit(rng), grid(rng) / 6.0, trial % 2 ? unit(rng) : 0.5};
      x.push_row(row);
      y.push_back(std::sin(4 * row[0]) + row[1] * row[1] + 0.1 * unit(rng));
    }
    const auto tree = RegressionTree::fit(x, y, params);
    const auto& nodes = tree.nodes();
    // Route every row from the root, collecting the rows reaching each node.
    std::vector<std::vector<std::size_t>> reach(nodes.size());
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t node = 0;
      for (;;) {
        reach[node].push_back(i);
        if (nodes[node].is_leaf()) break;
        node = x(i, static_cast<std::size_t>(nodes[node].feature)) <= nodes[node].threshold ? nodes[node].left
                                                                                          : nodes[node].right;
      }
      EXPECT_EQ(tree.leaf_for(x.row(i)), node);
    }
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const auto& rows = reach[k];
      ASSERT_FALSE(rows.empty());
      EXPECT_EQ(rows.size(), nodes[k].count);
      EXPECT_LE(nodes[k].depth, params.max_depth);
      if (nodes[k].is_leaf()) {
        EXPECT_GE(rows.size(), params.min_leaf);
        double mean = 0.0;
        for (auto i : rows) mean += y[i];
        mean /= static_cast<double>(rows.size());
        EXPECT_NEAR(nodes[k].value, mean, 1e-12);
      } else {
        EXPECT_LT(sse(reach[nodes[k].left], y) + sse(reach[nodes[k].right], y), sse(rows, y));
      }
    }
  }
}

TEST(RegressionTree, DepthCap) {
  FeatureMatrix x(1);
  std::vector<double> y;
  for (int i = 0; i < 64; ++i) {
    x.push_row(std::vector<double>{static_cast<double>(i)});
    y.push_back(i % 2);
  }
  const auto tree = RegressionTree::fit(x, y, {1, 2});
  EXPECT_LE(tree.depth(), 2u);
  EXPECT_LE(tree.leaf_count(), 4u);
}

}  // namespace
}  // namespace repagg
