#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace repagg {

enum class RatingFormat { Ml100k, Ml1m, Csv };

/// Accepts "ml-100k", "ml-1m" (also used for the 10M release) and "csv".
RatingFormat parse_format(std::string_view name);
std::string_view format_name(RatingFormat format);

struct RatingRecord {
  std::uint32_t consumer_id = 0;
  std::uint32_t product_id = 0;
  double rating = 0.0;
  std::int64_t timestamp = 0;

  friend bool operator==(const RatingRecord&, const RatingRecord&) = default;
};

inline constexpr double kMinRating = 0.5;
inline constexpr double kMaxRating = 5.0;

/// Ratings are stored on the half-star grid: slot 0 is 0.5 stars, slot 9 is 5.0.
inline constexpr std::size_t kRatingSlots = 10;
using RatingHistogram = std::array<std::uint32_t, kRatingSlots>;

std::size_t rating_slot(double rating);
constexpr double slot_rating(std::size_t slot) { return 0.5 * static_cast<double>(slot + 1); }

/// Admissible levels 1..5 in whole stars.
std::vector<double> integer_levels();
/// Admissible levels 0.5..5.0 in half stars.
std::vector<double> half_star_levels();

/// One rating seen from the consumer side; `product` is a product index.
struct ConsumerEntry {
  std::uint32_t product;
  float rating;
};

/// One rating seen from the product side; `consumer` is a consumer index.
struct ProductEntry {
  std::uint32_t consumer;
  float rating;
};

struct DatasetStats {
  std::size_t consumer_count = 0;
  std::size_t product_count = 0;
  std::size_t rating_count = 0;

  friend bool operator==(const DatasetStats&, const DatasetStats&) = default;
};

/// Immutable, indexed collection of ratings.
///
/// Consumers and products are addressed either by their external id or by a
/// dense index (position in ascending id order). Records are kept sorted by
/// (consumer_id, product_id) with at most one record per pair.
class RatingTable {
 public:
  RatingTable() = default;

  /// Deduplicates (keeping the greatest timestamp, then the greatest rating)
  /// and indexes `records`. `levels` must be ascending.
  static RatingTable build(std::vector<RatingRecord> records, std::vector<double> levels);

  bool empty() const noexcept { return records_.empty(); }
  std::size_t size() const noexcept { return records_.size(); }
  std::span<const RatingRecord> records() const noexcept { return records_; }

  std::size_t consumer_count() const noexcept { return consumer_ids_.size(); }
  std::size_t product_count() const noexcept { return product_ids_.size(); }
  std::span<const std::uint32_t> consumer_ids() const noexcept { return consumer_ids_; }
  std::span<const std::uint32_t> product_ids() const noexcept { return product_ids_; }

  std::optional<std::size_t> find_consumer(std::uint32_t consumer_id) const noexcept;
  std::optional<std::size_t> find_product(std::uint32_t product_id) const noexcept;
  /// Throws LookupError for unknown ids.
  std::size_t consumer_index(std::uint32_t consumer_id) const;
  std::size_t product_index(std::uint32_t product_id) const;

  /// Ratings by one consumer, ascending product id. Entry i matches
  /// records()[consumer_offset(c) + i].
  std::span<const ConsumerEntry> consumer_ratings(std::size_t consumer) const;
  std::size_t consumer_offset(std::size_t consumer) const { return consumer_offsets_[consumer]; }
  /// Ratings of one product, ascending consumer id.
  std::span<const ProductEntry> product_ratings(std::size_t product) const;

  double product_mean(std::size_t product) const { return product_means_[product]; }
  const RatingHistogram& product_histogram(std::size_t product) const {
    return product_histograms_[product];
  }

  std::span<const double> rating_levels() const noexcept { return levels_; }
  double min_level() const noexcept { return levels_.front(); }
  double max_level() const noexcept { return levels_.back(); }
  bool is_level(double rating) const noexcept;

  std::size_t duplicates_removed() const noexcept { return duplicates_removed_; }

 private:
  std::vector<RatingRecord> records_;
  std::vector<std::uint32_t> consumer_ids_;
  std::vector<std::uint32_t> product_ids_;
  std::vector<std::size_t> consumer_offsets_;
  std::vector<ConsumerEntry> by_consumer_;
  std::vector<std::size_t> product_offsets_;
  std::vector<ProductEntry> by_product_;
  std::vector<double> product_means_;
  std::vector<RatingHistogram> product_histograms_;
  std::vector<double> levels_ = integer_levels();
  std::size_t duplicates_removed_ = 0;
};

/// Parses a whole ratings file. Malformed lines raise ParseError with the
/// 1-based line number; ratings outside [0.5, 5] raise RangeError; input
/// without records raises EmptyInputError.
RatingTable parse_ratings(std::istream& in, RatingFormat format);
RatingTable parse_ratings(std::string_view text, RatingFormat format);
/// Same as parse_ratings, with a DataError naming the path if it cannot be opened.
RatingTable load_ratings(const std::filesystem::path& path, RatingFormat format);

DatasetStats dataset_stats(const RatingTable& table);

struct ValidationReport {
  std::size_t duplicates_removed = 0;
  std::size_t out_of_level_count = 0;
  /// First few offending records, in table order.
  std::vector<RatingRecord> out_of_level_samples;
  std::optional<std::int64_t> min_timestamp;
  std::optional<std::int64_t> max_timestamp;

  std::size_t anomaly_count() const noexcept { return duplicates_removed + out_of_level_count; }
};

ValidationReport validate(const RatingTable& table);

/// Writes the table in the generic csv format (header plus one line per record).
void write_csv(const RatingTable& table, std::ostream& out);

}  // namespace repagg
