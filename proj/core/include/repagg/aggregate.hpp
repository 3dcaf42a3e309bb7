#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "repagg/ingest.hpp"
#include "repagg/learn.hpp"

namespace repagg {

struct ProductScore {
  std::uint32_t product_id = 0;
  double score = 0.0;
  std::size_t n_ratings = 0;
};

/// Reputation scores of every rated product, ascending product_id.
class ProductScoreTable {
 public:
  ProductScoreTable() = default;
  ProductScoreTable(std::string method, std::vector<ProductScore> scores);

  const std::string& method() const noexcept { return method_; }
  std::span<const ProductScore> scores() const noexcept { return scores_; }
  std::size_t size() const noexcept { return scores_.size(); }
  std::optional<double> score_of(std::uint32_t product_id) const;

 private:
  std::string method_;
  std::vector<ProductScore> scores_;
};

/// sum(w_j r_j) / sum(w_j) over the product's raters; falls back to the
/// plain mean when the weight sum is below 1e-12.
double weighted_score(const RatingTable& table, const WeightMap& weights, std::uint32_t product_id);

ProductScoreTable score_all(const RatingTable& table, const WeightMap& weights,
                            std::string method = "weighted");

enum class BaselineMethod { Average, Median, Imdb, Bayesian, Dirichlet };

/// Case-insensitive.
BaselineMethod parse_baseline(std::string_view name);
std::string_view baseline_name(BaselineMethod method);

struct BaselineSpec {
  BaselineMethod method = BaselineMethod::Average;
  /// Minimum-votes threshold; unset means the 25th percentile of
  /// per-product rating counts.
  std::optional<double> imdb_m;
  /// Prior strength for bayesian and dirichlet.
  double prior_weight = 2.0;
};

/// 25th percentile (linear interpolation) of per-product rating counts.
double default_imdb_m(const RatingTable& table);
double global_mean(const RatingTable& table);

/// Label carrying the full parameterization, e.g. "imdb(m=3)".
std::string baseline_label(const RatingTable& table, const BaselineSpec& spec);

ProductScoreTable baseline_scores(const RatingTable& table, const BaselineSpec& spec);

/// Header `product_id,score,n_ratings,method`, 9 significant digits.
void write_scores_csv(const ProductScoreTable& scores, std::ostream& out);
/// Reads a file written by write_scores_csv. The method label is taken from
/// the first data row.
ProductScoreTable read_scores_csv(std::istream& in);

}  // namespace repagg
