#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "repagg/ingest.hpp"

namespace repagg {

struct LambdaConfig {
  double lambda = 0.95;

  /// Throws ConfigError unless 0 < lambda < 1.
  void validate() const;
};

struct TendencyCounts {
  std::uint32_t pos = 0;
  std::uint32_t nut = 0;
  std::uint32_t ngv = 0;

  friend bool operator==(const TendencyCounts&, const TendencyCounts&) = default;
};

/// Profile variables in their fixed column order.
enum class Variable : std::size_t { Pos = 0, Nut, Ngv, Exp, Fluc, Rel };
inline constexpr std::size_t kVariableCount = 6;
inline constexpr std::size_t kFeatureCount = 5;  // every variable except rel
inline constexpr std::array<std::string_view, kVariableCount> kVariableNames = {
    "pos", "nut", "ngv", "exp", "fluc", "rel"};

struct ConsumerProfile {
  std::uint32_t consumer_id = 0;
  std::uint32_t pos = 0;
  std::uint32_t nut = 0;
  std::uint32_t ngv = 0;
  double exp = 0.0;
  double fluc = 1.0;
  double rel = 0.0;

  std::array<double, kVariableCount> values() const;

  friend bool operator==(const ConsumerProfile&, const ConsumerProfile&) = default;
};

/// Positive is >= 3.5 stars, negative <= 2.5, neutral in between.
TendencyCounts tendency_counts(const RatingTable& table, std::uint32_t consumer_id);

/// Mean, over products the consumer shares with at least one other rater, of
/// the mean agreement lambda^|r_i - r_j| with those other raters. 1.0 when
/// nothing is shared. Evaluated from product histograms in O(levels).
double fluctuation(const RatingTable& table, std::uint32_t consumer_id, const LambdaConfig& cfg);

/// Rating count relative to the most prolific consumer.
double experience(const RatingTable& table, std::uint32_t consumer_id);

/// Mean absolute deviation of the consumer's ratings from the product means.
double reliability(const RatingTable& table, std::uint32_t consumer_id);

/// One profile per consumer in ascending consumer_id order. `threads` only
/// changes scheduling; the result is bit-identical for any value.
std::vector<ConsumerProfile> build_profiles(const RatingTable& table, const LambdaConfig& cfg,
                                            unsigned threads = 1);

struct ScalingParams {
  std::array<double, kVariableCount> min{};
  std::array<double, kVariableCount> max{};

  /// (v - min) / (max - min); 0 for a constant variable.
  double scale(Variable var, double value) const;
  double unscale(Variable var, double scaled) const;
};

/// Optional pre-scaling transform of the count variables (log(1 + v)).
struct ProfileTransform {
  bool log_counts = false;
};

std::array<double, kVariableCount> transformed_values(const ConsumerProfile& profile,
                                                      const ProfileTransform& transform);

struct ScaledRow {
  std::uint32_t consumer_id = 0;
  std::array<double, kFeatureCount> features{};
  double target = 0.0;
};

struct ProfileMatrix {
  std::vector<ConsumerProfile> raw;
  std::vector<ScaledRow> rows;
  ScalingParams scaling;
  ProfileTransform transform;

  std::size_t size() const noexcept { return rows.size(); }
};

ScalingParams fit_scaling(std::span<const ConsumerProfile> profiles,
                          const ProfileTransform& transform = {});
ScaledRow apply_scaling(const ScalingParams& params, const ConsumerProfile& profile,
                        const ProfileTransform& transform = {});

/// Fits scaling on `profiles` and scales every row. Throws EmptyInputError
/// on an empty collection.
ProfileMatrix minmax_scale(std::span<const ConsumerProfile> profiles,
                           const ProfileTransform& transform = {});

/// Header `consumer_id,pos,nut,ngv,exp,fluc,rel`, raw values, 9 significant digits.
void write_profiles_csv(std::span<const ConsumerProfile> profiles, std::ostream& out);

}  // namespace repagg
