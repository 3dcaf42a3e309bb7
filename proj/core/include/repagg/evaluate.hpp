#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "repagg/aggregate.hpp"
#include "repagg/ingest.hpp"
#include "repagg/learn.hpp"

namespace repagg {

/// Mean over products of the mean absolute deviation of that product's
/// ratings from its score. Throws DataError when a rated product has no score.
double mae(const RatingTable& table, const ProductScoreTable& scores);

/// Kendall tau-b of paired values in O(n log n). When one side is constant
/// the statistic is undefined; it is reported as 1 if both sides are
/// constant and 0 otherwise. Throws ConfigError when n < 2 or sizes differ.
double kendall_tau_b(std::span<const double> a, std::span<const double> b);

/// tau-b between two score lists over the same product set.
double kendall_tau(std::span<const ProductScore> a, std::span<const ProductScore> b);

struct KendallPoint {
  int threshold_pct = 0;
  std::size_t set_size = 0;
  double tau = 0.0;
};

struct KendallCurve {
  std::string reference;
  std::string other;
  std::vector<KendallPoint> points;
};

/// Thresholds 1, 10, 20, ..., 100 percent.
std::vector<int> default_thresholds();

/// For each threshold p, takes the top ceil(p * M / 100) products of
/// `reference` (at least 2; ties by ascending product id) and computes tau-b
/// of both tables over that subset. Needs at least 10 products.
KendallCurve topk_tau_curve(const ProductScoreTable& reference, const ProductScoreTable& other,
                            std::span<const int> thresholds = {});

/// Ascending MAE; equal MAEs ordered by name.
std::vector<std::string> rank_models(std::vector<std::pair<std::string, double>> maes);

struct MethodResult {
  std::string name;
  std::string params;
  double mae = 0.0;
  std::vector<FoldDiagnostic> fold_diagnostics;
};

struct EvalReport {
  std::string dataset;
  double lambda = 0.95;
  std::uint64_t seed = 0;
  std::vector<MethodResult> models;
  std::vector<KendallCurve> curves;
  std::vector<std::string> ranking;
};

void write_eval_json(const EvalReport& report, std::ostream& out);
/// Header `reference,other,threshold_pct,set_size,tau`.
void write_kendall_csv(std::span<const KendallCurve> curves, std::ostream& out);

}  // namespace repagg
