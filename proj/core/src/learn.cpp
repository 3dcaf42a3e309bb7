#include "repagg/learn.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <ostream>
#include <random>

#include "repagg/error.hpp"
#include "repagg/format.hpp"
#include "repagg/parallel.hpp"

namespace repagg {

Algorithm parse_algorithm(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "lr") return Algorithm::LR;
  if (lower == "rt") return Algorithm::RT;
  if (lower == "svr") return Algorithm::SVR;
  if (lower == "knn") return Algorithm::KNN;
  throw ConfigError("unknown algorithm '" + std::string(name) + "' (expected lr, rt, svr or knn)");
}

std::string_view algorithm_name(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::LR: return "lr";
    case Algorithm::RT: return "rt";
    case Algorithm::SVR: return "svr";
    case Algorithm::KNN: return "knn";
  }
  return "unknown";
}

void RegressorSpec::validate() const {
  if (knn_k < 1) throw ConfigError("knn_k must be >= 1");
  if (!(svr_c > 0.0)) throw ConfigError("svr_c must be > 0");
  if (!(svr_epsilon >= 0.0)) throw ConfigError("svr_epsilon must be >= 0");
  if (svr_gamma && !(*svr_gamma > 0.0)) throw ConfigError("svr_gamma must be > 0");
  if (!(svr_tolerance > 0.0)) throw ConfigError("svr_tolerance must be > 0");
  if (cart_min_leaf < 1) throw ConfigError("cart_min_leaf must be >= 1");
}

double RegressorSpec::resolved_gamma(std::size_t feature_count) const {
  return svr_gamma.value_or(1.0 / static_cast<double>(std::max<std::size_t>(1, feature_count)));
}

std::string RegressorSpec::describe(std::size_t feature_count) const {
  switch (algorithm) {
    case Algorithm::LR:
      return std::string("log_transform=") + (lr_log_transform ? "true" : "false");
    case Algorithm::RT:
      return "min_leaf=" + std::to_string(cart_min_leaf) + " max_depth=" + std::to_string(cart_max_depth);
    case Algorithm::SVR:
      return "C=" + format_g9(svr_c) + " epsilon=" + format_g9(svr_epsilon) +
             " gamma=" + format_g9(resolved_gamma(feature_count)) + " tol=" + format_g9(svr_tolerance) +
             " kernel=rbf";
    case Algorithm::KNN:
      return "k=" + std::to_string(knn_k) + " metric=euclidean";
  }
  return {};
}

double TrainedRegressor::predict(std::span<const double> row) const {
  if (row.size() != arity_) {
    throw ConfigError("query has " + std::to_string(row.size()) + " features, model expects " +
                      std::to_string(arity_));
  }
  return std::visit([&](const auto& m) { return m.predict(row); }, model_);
}

TrainedRegressor fit(const RegressorSpec& spec, const FeatureMatrix& x, std::span<const double> y) {
  spec.validate();
  if (x.rows() == 0) throw EmptyInputError("empty training set");
  if (y.size() != x.rows()) throw DataError("feature and target counts differ");
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (double v : x.row(i)) {
      if (!std::isfinite(v)) throw DataError("non-finite feature in training row " + std::to_string(i));
    }
    if (!std::isfinite(y[i])) throw DataError("non-finite target in training row " + std::to_string(i));
  }

  switch (spec.algorithm) {
    case Algorithm::LR:
      return {spec, x.cols(), LinearRegression::fit(x, y)};
    case Algorithm::RT:
      return {spec, x.cols(), RegressionTree::fit(x, y, {spec.cart_min_leaf, spec.cart_max_depth})};
    case Algorithm::SVR: {
      SvrParams params;
      params.c = spec.svr_c;
      params.epsilon = spec.svr_epsilon;
      params.gamma = spec.resolved_gamma(x.cols());
      params.tolerance = spec.svr_tolerance;
      params.max_iterations = std::max<std::size_t>(10'000'000, 100 * x.rows());
      return {spec, x.cols(), SupportVectorRegression::fit(x, y, params)};
    }
    case Algorithm::KNN:
      return {spec, x.cols(), KnnRegressor::fit(x, std::vector<double>(y.begin(), y.end()), spec.knn_k)};
  }
  throw InvariantError("unhandled algorithm");
}

double predict(const TrainedRegressor& model, std::span<const double> row) {
  return model.predict(row);
}

std::size_t FoldPlan::fold_of(std::uint32_t consumer_id) const {
  const auto it = std::lower_bound(consumer_ids.begin(), consumer_ids.end(), consumer_id);
  if (it == consumer_ids.end() || *it != consumer_id) {
    throw LookupError("consumer " + std::to_string(consumer_id) + " is not in the fold plan");
  }
  return fold[static_cast<std::size_t>(it - consumer_ids.begin())];
}

std::vector<std::uint32_t> FoldPlan::members(std::size_t f) const {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < consumer_ids.size(); ++i) {
    if (fold[i] == f) out.push_back(consumer_ids[i]);
  }
  return out;
}

namespace {

// Unbiased draw from [0, bound) by rejection; std distributions are not
// specified bit-exactly across standard libraries.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

}  // namespace

std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(bounded_draw(rng, i));
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

FoldPlan kfold_split(std::span<const std::uint32_t> consumer_ids, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw ConfigError("fold count must be >= 2");
  if (k > consumer_ids.size()) {
    throw ConfigError("fold count " + std::to_string(k) + " exceeds consumer count " +
                      std::to_string(consumer_ids.size()));
  }
  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.consumer_ids.assign(consumer_ids.begin(), consumer_ids.end());
  std::sort(plan.consumer_ids.begin(), plan.consumer_ids.end());
  if (std::adjacent_find(plan.consumer_ids.begin(), plan.consumer_ids.end()) != plan.consumer_ids.end()) {
    throw ConfigError("duplicate consumer id in fold split");
  }
  plan.fold.assign(plan.consumer_ids.size(), 0);
  const auto perm = seeded_permutation(plan.consumer_ids.size(), seed);
  for (std::size_t pos = 0; pos < perm.size(); ++pos) plan.fold[perm[pos]] = pos % k;
  return plan;
}

double reliability_to_weight(double predicted_scaled_rel, double floor) {
  if (!std::isfinite(predicted_scaled_rel)) throw DataError("non-finite reliability prediction");
  const double clamped = std::clamp(predicted_scaled_rel, 0.0, 1.0);
  return std::max(floor, 1.0 - clamped);
}

WeightMap::WeightMap(std::vector<WeightEntry> entries, std::vector<FoldDiagnostic> diagnostics)
    : entries_(std::move(entries)), diagnostics_(std::move(diagnostics)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const WeightEntry& a, const WeightEntry& b) { return a.consumer_id < b.consumer_id; });
}

WeightMap WeightMap::uniform(std::span<const std::uint32_t> consumer_ids, double weight) {
  std::vector<WeightEntry> entries;
  entries.reserve(consumer_ids.size());
  for (auto id : consumer_ids) entries.push_back({id, 0.0, weight});
  return WeightMap(std::move(entries));
}

std::optional<double> WeightMap::weight_of(std::uint32_t consumer_id) const {
  const auto it = std::lower_bound(
      entries_.begin(), entries_.end(), consumer_id,
      [](const WeightEntry& e, std::uint32_t id) { return e.consumer_id < id; });
  if (it == entries_.end() || it->consumer_id != consumer_id) return std::nullopt;
  return it->weight;
}

WeightMap predict_weights_cv(const ProfileMatrix& matrix, const RegressorSpec& spec,
                             const FoldPlan& plan, const CvOptions& options) {
  spec.validate();
  const std::size_t n = matrix.size();
  if (plan.consumer_ids.size() != n) {
    throw ConfigError("fold plan covers " + std::to_string(plan.consumer_ids.size()) +
                      " consumers, matrix has " + std::to_string(n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (plan.consumer_ids[i] != matrix.rows[i].consumer_id) {
      throw ConfigError("fold plan and profile matrix disagree on consumer ids");
    }
  }

  ProfileTransform transform = matrix.transform;
  if (spec.algorithm == Algorithm::LR && spec.lr_log_transform) transform.log_counts = true;
  const bool rescale_all = !options.strict_fold_scaling && transform.log_counts != matrix.transform.log_counts;
  std::vector<ScaledRow> global_rows;
  if (rescale_all) global_rows = minmax_scale(matrix.raw, transform).rows;
  const std::vector<ScaledRow>& base_rows = rescale_all ? global_rows : matrix.rows;

  std::vector<double> predictions(n, 0.0);
  std::vector<FoldDiagnostic> diagnostics(plan.k);

  parallel_for(plan.k, options.threads, [&](std::size_t fold_begin, std::size_t fold_end) {
    for (std::size_t f = fold_begin; f < fold_end; ++f) {
      std::vector<std::size_t> train;
      std::vector<std::size_t> test;
      for (std::size_t i = 0; i < n; ++i) (plan.fold[i] == f ? test : train).push_back(i);

      std::vector<ScaledRow> fold_rows;
      const std::vector<ScaledRow>* rows = &base_rows;
      if (options.strict_fold_scaling) {
        std::vector<ConsumerProfile> train_profiles;
        train_profiles.reserve(train.size());
        for (std::size_t i : train) train_profiles.push_back(matrix.raw[i]);
        const ScalingParams params = fit_scaling(train_profiles, transform);
        fold_rows.resize(n);
        for (std::size_t i = 0; i < n; ++i) fold_rows[i] = apply_scaling(params, matrix.raw[i], transform);
        rows = &fold_rows;
      }

      FeatureMatrix x(kFeatureCount);
      std::vector<double> y;
      y.reserve(train.size());
      for (std::size_t i : train) {
        x.push_row((*rows)[i].features);
        y.push_back((*rows)[i].target);
      }
      const TrainedRegressor model = fit(spec, x, y);

      double abs_error = 0.0;
      for (std::size_t i : test) {
        predictions[i] = model.predict((*rows)[i].features);
        abs_error += std::abs(predictions[i] - (*rows)[i].target);
      }
      diagnostics[f] = {f, train.size(), test.size(),
                        test.empty() ? 0.0 : abs_error / static_cast<double>(test.size())};
    }
  });

  std::vector<WeightEntry> entries(n);
  for (std::size_t i = 0; i < n; ++i) {
    entries[i] = {matrix.rows[i].consumer_id, predictions[i],
                  reliability_to_weight(predictions[i], options.weight_floor)};
  }
  return WeightMap(std::move(entries), std::move(diagnostics));
}

void write_weights_csv(const WeightMap& weights, std::ostream& out) {
  out << "consumer_id,predicted_rel_scaled,weight\n";
  for (const auto& e : weights.entries()) {
    out << e.consumer_id << ',' << format_g9(e.predicted_rel_scaled) << ',' << format_g9(e.weight) << '\n';
  }
}

}  // namespace repagg
