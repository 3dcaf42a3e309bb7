#include "repagg/regression_tree.hpp"

#include <algorithm>
#include <numeric>

#include "repagg/error.hpp"

namespace repagg {

namespace {

// Smallest reduction in summed squared error that counts as an improvement.
constexpr double kMinGain = 1e-12;

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double gain = 0.0;
};

class TreeBuilder {
 public:
  TreeBuilder(const FeatureMatrix& x, std::span<const double> y, const TreeParams& params,
              std::vector<RegressionTree::Node>& nodes)
      : x_(x), y_(y), params_(params), nodes_(nodes) {}

  std::size_t grow(std::vector<std::size_t> rows, std::size_t depth) {
    const std::size_t id = nodes_.size();
    nodes_.emplace_back();
    double sum = 0.0;
    for (std::size_t r : rows) sum += y_[r];
    const double mean = sum / static_cast<double>(rows.size());
    nodes_[id].value = mean;
    nodes_[id].count = rows.size();
    nodes_[id].depth = depth;

    if (depth >= params_.max_depth || rows.size() < 2 * params_.min_leaf) return id;
    const Split split = best_split(rows, mean);
    if (split.feature < 0) return id;

    std::vector<std::size_t> left_rows;
    std::vector<std::size_t> right_rows;
    const auto f = static_cast<std::size_t>(split.feature);
    for (std::size_t r : rows) {
      (x_(r, f) <= split.threshold ? left_rows : right_rows).push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();

    nodes_[id].feature = split.feature;
    nodes_[id].threshold = split.threshold;
    const std::size_t left = grow(std::move(left_rows), depth + 1);
    const std::size_t right = grow(std::move(right_rows), depth + 1);
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
  }

 private:
  Split best_split(const std::vector<std::size_t>& rows, double mean) const {
    Split best;
    const std::size_t n = rows.size();
    std::vector<std::size_t> order(rows);
    for (std::size_t f = 0; f < x_.cols(); ++f) {
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double va = x_(a, f);
        const double vb = x_(b, f);
        return va != vb ? va < vb : a < b;
      });
      // Centered prefix sums keep the gain free of cancellation.
      double left_sum = 0.0;
      const double total = [&] {
        double t = 0.0;
        for (std::size_t r : order) t += y_[r] - mean;
        return t;
      }();
      for (std::size_t i = 0; i + 1 < n; ++i) {
        left_sum += y_[order[i]] - mean;
        const std::size_t n_left = i + 1;
        const std::size_t n_right = n - n_left;
        const double v = x_(order[i], f);
        const double next = x_(order[i + 1], f);
        if (v == next || n_left < params_.min_leaf || n_right < params_.min_leaf) continue;
        const double left_mean = left_sum / static_cast<double>(n_left);
        const double right_mean = (total - left_sum) / static_cast<double>(n_right);
        const double diff = left_mean - right_mean;
        const double gain = static_cast<double>(n_left) * static_cast<double>(n_right) /
                            static_cast<double>(n) * diff * diff;
        if (gain > kMinGain && gain > best.gain) {
          best.feature = static_cast<int>(f);
          const double mid = v + (next - v) / 2.0;
          best.threshold = mid < next ? mid : v;
          best.gain = gain;
        }
      }
    }
    return best;
  }

  const FeatureMatrix& x_;
  std::span<const double> y_;
  const TreeParams& params_;
  std::vector<RegressionTree::Node>& nodes_;
};

}  // namespace

RegressionTree RegressionTree::fit(const FeatureMatrix& x, std::span<const double> y,
                                   const TreeParams& params) {
  if (x.rows() == 0) throw EmptyInputError("regression tree needs at least one row");
  if (y.size() != x.rows()) throw ConfigError("feature and target counts differ");
  if (params.min_leaf < 1) throw ConfigError("cart_min_leaf must be >= 1");

  RegressionTree tree;
  std::vector<std::size_t> rows(x.rows());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  TreeBuilder(x, y, params, tree.nodes_).grow(std::move(rows), 0);
  return tree;
}

std::size_t RegressionTree::leaf_for(std::span<const double> row) const {
  std::size_t id = 0;
  while (!nodes_[id].is_leaf()) {
    const auto& node = nodes_[id];
    id = row[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left : node.right;
  }
  return id;
}

std::size_t RegressionTree::leaf_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.is_leaf(); }));
}

std::size_t RegressionTree::depth() const noexcept {
  std::size_t d = 0;
  for (const auto& n : nodes_) d = std::max(d, n.depth);
  return d;
}

}  // namespace repagg
