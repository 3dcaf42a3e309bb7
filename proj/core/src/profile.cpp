#include "repagg/profile.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "repagg/error.hpp"
#include "repagg/format.hpp"
#include "repagg/parallel.hpp"

namespace repagg {

void LambdaConfig::validate() const {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw ConfigError("lambda must lie in (0, 1), got " + format_g9(lambda));
  }
}

std::array<double, kVariableCount> ConsumerProfile::values() const {
  return {static_cast<double>(pos), static_cast<double>(nut), static_cast<double>(ngv),
          exp, fluc, rel};
}

namespace {

using PowerTable = std::array<double, kRatingSlots>;

// lambda^(d/2) for a gap of d half-stars.
PowerTable power_table(double lambda) {
  PowerTable table{};
  for (std::size_t d = 0; d < kRatingSlots; ++d) table[d] = std::pow(lambda, 0.5 * static_cast<double>(d));
  return table;
}

// Sum over every rater of the product (including the consumer) of lambda^|r - v|.
double histogram_agreement(const RatingHistogram& hist, std::size_t slot, const PowerTable& pw) {
  double sum = 0.0;
  for (std::size_t v = 0; v < kRatingSlots; ++v) {
    if (hist[v] == 0) continue;
    const std::size_t gap = v > slot ? v - slot : slot - v;
    sum += static_cast<double>(hist[v]) * pw[gap];
  }
  return sum;
}

TendencyCounts count_tendency(std::span<const ConsumerEntry> ratings) {
  TendencyCounts counts;
  for (const auto& e : ratings) {
    if (e.rating >= 3.5f) {
      ++counts.pos;
    } else if (e.rating <= 2.5f) {
      ++counts.ngv;
    } else {
      ++counts.nut;
    }
  }
  return counts;
}

template <typename AgreementFn>
double fluctuation_of(const RatingTable& table, std::span<const ConsumerEntry> ratings,
                      AgreementFn&& agreement) {
  double total = 0.0;
  std::size_t qualifying = 0;
  for (const auto& e : ratings) {
    const std::size_t raters = table.product_ratings(e.product).size();
    if (raters < 2) continue;
    // The consumer's own term is lambda^0 = 1.
    total += (agreement(e.product, rating_slot(e.rating)) - 1.0) / static_cast<double>(raters - 1);
    ++qualifying;
  }
  return qualifying == 0 ? 1.0 : total / static_cast<double>(qualifying);
}

double reliability_of(const RatingTable& table, std::span<const ConsumerEntry> ratings) {
  double total = 0.0;
  for (const auto& e : ratings) total += std::abs(e.rating - table.product_mean(e.product));
  return ratings.empty() ? 0.0 : total / static_cast<double>(ratings.size());
}

std::size_t max_consumer_count(const RatingTable& table) {
  std::size_t best = 0;
  for (std::size_t c = 0; c < table.consumer_count(); ++c) {
    best = std::max(best, table.consumer_ratings(c).size());
  }
  return best;
}

}  // namespace

TendencyCounts tendency_counts(const RatingTable& table, std::uint32_t consumer_id) {
  return count_tendency(table.consumer_ratings(table.consumer_index(consumer_id)));
}

double fluctuation(const RatingTable& table, std::uint32_t consumer_id, const LambdaConfig& cfg) {
  cfg.validate();
  const auto ratings = table.consumer_ratings(table.consumer_index(consumer_id));
  const PowerTable pw = power_table(cfg.lambda);
  return fluctuation_of(table, ratings, [&](std::size_t product, std::size_t slot) {
    return histogram_agreement(table.product_histogram(product), slot, pw);
  });
}

double experience(const RatingTable& table, std::uint32_t consumer_id) {
  const auto ratings = table.consumer_ratings(table.consumer_index(consumer_id));
  return static_cast<double>(ratings.size()) / static_cast<double>(max_consumer_count(table));
}

double reliability(const RatingTable& table, std::uint32_t consumer_id) {
  return reliability_of(table, table.consumer_ratings(table.consumer_index(consumer_id)));
}

std::vector<ConsumerProfile> build_profiles(const RatingTable& table, const LambdaConfig& cfg,
                                            unsigned threads) {
  cfg.validate();
  if (table.empty()) throw EmptyInputError("cannot build profiles from an empty table");

  const PowerTable pw = power_table(cfg.lambda);
  std::vector<std::array<double, kRatingSlots>> agreement(table.product_count());
  parallel_for(table.product_count(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      const auto& hist = table.product_histogram(p);
      for (std::size_t s = 0; s < kRatingSlots; ++s) agreement[p][s] = histogram_agreement(hist, s, pw);
    }
  });

  const double max_count = static_cast<double>(max_consumer_count(table));
  std::vector<ConsumerProfile> profiles(table.consumer_count());
  parallel_for(table.consumer_count(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c) {
      const auto ratings = table.consumer_ratings(c);
      const TendencyCounts counts = count_tendency(ratings);
      ConsumerProfile& profile = profiles[c];
      profile.consumer_id = table.consumer_ids()[c];
      profile.pos = counts.pos;
      profile.nut = counts.nut;
      profile.ngv = counts.ngv;
      profile.exp = static_cast<double>(ratings.size()) / max_count;
      profile.fluc = fluctuation_of(table, ratings, [&](std::size_t product, std::size_t slot) {
        return agreement[product][slot];
      });
      profile.rel = reliability_of(table, ratings);
    }
  });
  return profiles;
}

double ScalingParams::scale(Variable var, double value) const {
  const auto i = static_cast<std::size_t>(var);
  const double range = max[i] - min[i];
  if (range <= 0.0) return 0.0;
  return (value - min[i]) / range;
}

double ScalingParams::unscale(Variable var, double scaled) const {
  const auto i = static_cast<std::size_t>(var);
  return min[i] + scaled * (max[i] - min[i]);
}

std::array<double, kVariableCount> transformed_values(const ConsumerProfile& profile,
                                                      const ProfileTransform& transform) {
  auto values = profile.values();
  if (transform.log_counts) {
    for (std::size_t i = 0; i < 3; ++i) values[i] = std::log1p(values[i]);
  }
  return values;
}

ScalingParams fit_scaling(std::span<const ConsumerProfile> profiles,
                          const ProfileTransform& transform) {
  if (profiles.empty()) throw EmptyInputError("cannot fit scaling on zero profiles");
  ScalingParams params;
  params.min = transformed_values(profiles.front(), transform);
  params.max = params.min;
  for (const auto& profile : profiles) {
    const auto values = transformed_values(profile, transform);
    for (std::size_t i = 0; i < kVariableCount; ++i) {
      params.min[i] = std::min(params.min[i], values[i]);
      params.max[i] = std::max(params.max[i], values[i]);
    }
  }
  return params;
}

ScaledRow apply_scaling(const ScalingParams& params, const ConsumerProfile& profile,
                        const ProfileTransform& transform) {
  const auto values = transformed_values(profile, transform);
  ScaledRow row;
  row.consumer_id = profile.consumer_id;
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    row.features[i] = params.scale(static_cast<Variable>(i), values[i]);
  }
  row.target = params.scale(Variable::Rel, values[static_cast<std::size_t>(Variable::Rel)]);
  return row;
}

ProfileMatrix minmax_scale(std::span<const ConsumerProfile> profiles,
                           const ProfileTransform& transform) {
  ProfileMatrix matrix;
  matrix.scaling = fit_scaling(profiles, transform);
  matrix.transform = transform;
  matrix.raw.assign(profiles.begin(), profiles.end());
  matrix.rows.reserve(profiles.size());
  for (const auto& profile : profiles) {
    matrix.rows.push_back(apply_scaling(matrix.scaling, profile, transform));
  }
  return matrix;
}

void write_profiles_csv(std::span<const ConsumerProfile> profiles, std::ostream& out) {
  out << "consumer_id,pos,nut,ngv,exp,fluc,rel\n";
  for (const auto& p : profiles) {
    out << p.consumer_id << ',' << p.pos << ',' << p.nut << ',' << p.ngv << ',' << format_g9(p.exp)
        << ',' << format_g9(p.fluc) << ',' << format_g9(p.rel) << '\n';
  }
}

}  // namespace repagg
