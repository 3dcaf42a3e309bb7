#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "repagg/aggregate.hpp"
#include "repagg/ingest.hpp"
#include "repagg/learn.hpp"

namespace repagg {

/// Fully resolved settings of one pipeline invocation.
struct RunConfig {
  std::filesystem::path dataset;
  RatingFormat format = RatingFormat::Ml100k;
  double lambda = 0.95;
  std::vector<Algorithm> algorithms = {Algorithm::LR, Algorithm::RT, Algorithm::SVR, Algorithm::KNN};
  std::vector<BaselineMethod> baselines = {BaselineMethod::Average, BaselineMethod::Median,
                                           BaselineMethod::Imdb, BaselineMethod::Bayesian,
                                           BaselineMethod::Dirichlet};
  std::size_t k_folds = 10;
  std::uint64_t seed = 0;
  double weight_floor = kDefaultWeightFloor;
  bool strict_fold_scaling = false;
  /// Hyperparameters; the algorithm field is ignored.
  RegressorSpec regressor;
  std::optional<double> imdb_m;
  double prior_weight = 2.0;
  unsigned threads = 1;
  std::filesystem::path out_dir = "repagg_out";

  /// Throws ConfigError on violated invariants.
  void validate() const;
  RegressorSpec spec_for(Algorithm algorithm) const;
  BaselineSpec baseline_spec(BaselineMethod method) const;
};

/// Applies one `key = value` setting. Keys use the long flag names with
/// either '-' or '_' as separator ("k-folds", "k_folds"). Lists are comma
/// separated; "none" selects nothing. Throws ConfigError on unknown keys or
/// unparsable values.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Applies a config file: one `key = value` per line, '#' starts a comment.
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

/// Every parameter that influences outputs, as pretty-printed JSON.
/// Worker count and output directory are excluded since they never change
/// output bytes.
std::string config_json(const RunConfig& config);

}  // namespace repagg
