#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "repagg/feature_matrix.hpp"
#include "repagg/knn.hpp"
#include "repagg/linear_regression.hpp"
#include "repagg/profile.hpp"
#include "repagg/regression_tree.hpp"
#include "repagg/svr.hpp"

namespace repagg {

enum class Algorithm { LR, RT, SVR, KNN };

/// Accepts "lr", "rt", "svr", "knn" in any case.
Algorithm parse_algorithm(std::string_view name);
/// Lower-case name used in file names and reports.
std::string_view algorithm_name(Algorithm algorithm);

struct RegressorSpec {
  Algorithm algorithm = Algorithm::LR;
  std::size_t knn_k = 5;
  double svr_c = 1.0;
  double svr_epsilon = 0.1;
  /// Unset means 1 / (number of input features).
  std::optional<double> svr_gamma;
  double svr_tolerance = 1e-3;
  std::size_t cart_min_leaf = 5;
  std::size_t cart_max_depth = 12;
  bool lr_log_transform = false;

  void validate() const;
  double resolved_gamma(std::size_t feature_count) const;
  /// Compact "key=value" description of the parameters this algorithm uses.
  std::string describe(std::size_t feature_count = kFeatureCount) const;
};

/// A fitted model; immutable and safe to share between threads.
class TrainedRegressor {
 public:
  using Model = std::variant<LinearRegression, RegressionTree, SupportVectorRegression, KnnRegressor>;

  TrainedRegressor(RegressorSpec spec, std::size_t arity, Model model)
      : spec_(std::move(spec)), arity_(arity), model_(std::move(model)) {}

  /// Throws ConfigError when the row length differs from the training arity.
  double predict(std::span<const double> row) const;

  const RegressorSpec& spec() const noexcept { return spec_; }
  std::size_t arity() const noexcept { return arity_; }
  const Model& model() const noexcept { return model_; }

 private:
  RegressorSpec spec_;
  std::size_t arity_;
  Model model_;
};

/// Throws EmptyInputError on an empty training set and DataError on
/// non-finite values.
TrainedRegressor fit(const RegressorSpec& spec, const FeatureMatrix& x, std::span<const double> y);
double predict(const TrainedRegressor& model, std::span<const double> row);

struct FoldPlan {
  std::size_t k = 10;
  std::uint64_t seed = 0;
  /// Ascending consumer ids and the fold of each.
  std::vector<std::uint32_t> consumer_ids;
  std::vector<std::size_t> fold;

  std::size_t fold_of(std::uint32_t consumer_id) const;
  std::vector<std::uint32_t> members(std::size_t f) const;
};

/// Sorts ids, shuffles them with a seeded permutation and deals them round
/// robin into k folds.
FoldPlan kfold_split(std::span<const std::uint32_t> consumer_ids, std::size_t k, std::uint64_t seed);

/// Seeded Fisher-Yates permutation of [0, n), identical on every platform.
std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed);

inline constexpr double kDefaultWeightFloor = 0.01;

/// Clamps to [0, 1] and maps low predicted error to high weight:
/// max(floor, 1 - clamped). Throws DataError on non-finite input.
double reliability_to_weight(double predicted_scaled_rel, double floor = kDefaultWeightFloor);

struct FoldDiagnostic {
  std::size_t fold = 0;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  /// Mean absolute error of predicted vs. actual scaled reliability.
  double mae = 0.0;
};

struct WeightEntry {
  std::uint32_t consumer_id = 0;
  double predicted_rel_scaled = 0.0;
  double weight = 1.0;
};

/// Per-consumer aggregation weights in ascending consumer_id order.
class WeightMap {
 public:
  WeightMap() = default;
  explicit WeightMap(std::vector<WeightEntry> entries, std::vector<FoldDiagnostic> diagnostics = {});

  /// Every consumer gets `weight`; predicted reliability is left at 0.
  static WeightMap uniform(std::span<const std::uint32_t> consumer_ids, double weight = 1.0);

  std::span<const WeightEntry> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::optional<double> weight_of(std::uint32_t consumer_id) const;
  const std::vector<FoldDiagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<WeightEntry> entries_;
  std::vector<FoldDiagnostic> diagnostics_;
};

struct CvOptions {
  double weight_floor = kDefaultWeightFloor;
  /// Fit Min-Max scaling on each training fold instead of the full collection.
  bool strict_fold_scaling = false;
  unsigned threads = 1;
};

/// Trains on all folds but one and predicts the held-out fold, for every
/// fold. Each consumer receives exactly one out-of-fold prediction.
WeightMap predict_weights_cv(const ProfileMatrix& matrix, const RegressorSpec& spec,
                             const FoldPlan& plan, const CvOptions& options = {});

/// Header `consumer_id,predicted_rel_scaled,weight`, 9 significant digits.
void write_weights_csv(const WeightMap& weights, std::ostream& out);

}  // namespace repagg
