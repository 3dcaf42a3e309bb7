#include "repagg/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <sstream>

#include "repagg/error.hpp"
#include "repagg/format.hpp"

namespace repagg {

RatingFormat parse_format(std::string_view name) {
  if (name == "ml-100k") return RatingFormat::Ml100k;
  if (name == "ml-1m" || name == "ml-10m") return RatingFormat::Ml1m;
  if (name == "csv") return RatingFormat::Csv;
  throw ConfigError("unknown rating format '" + std::string(name) +
                    "' (expected ml-100k, ml-1m or csv)");
}

std::string_view format_name(RatingFormat format) {
  switch (format) {
    case RatingFormat::Ml100k: return "ml-100k";
    case RatingFormat::Ml1m: return "ml-1m";
    case RatingFormat::Csv: return "csv";
  }
  return "unknown";
}

std::size_t rating_slot(double rating) {
  const long twice = std::lround(rating * 2.0);
  return static_cast<std::size_t>(std::clamp(twice, 1L, static_cast<long>(kRatingSlots)) - 1);
}

std::vector<double> integer_levels() { return {1.0, 2.0, 3.0, 4.0, 5.0}; }

std::vector<double> half_star_levels() {
  std::vector<double> levels;
  for (std::size_t s = 0; s < kRatingSlots; ++s) levels.push_back(slot_rating(s));
  return levels;
}

RatingTable RatingTable::build(std::vector<RatingRecord> records, std::vector<double> levels) {
  if (levels.empty() || !std::is_sorted(levels.begin(), levels.end())) {
    throw ConfigError("rating levels must be a nonempty ascending list");
  }
  RatingTable table;
  table.levels_ = std::move(levels);

  // Greatest timestamp wins, then greatest rating, so the survivor never
  // depends on input order.
  std::sort(records.begin(), records.end(), [](const RatingRecord& a, const RatingRecord& b) {
    if (a.consumer_id != b.consumer_id) return a.consumer_id < b.consumer_id;
    if (a.product_id != b.product_id) return a.product_id < b.product_id;
    if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
    return a.rating < b.rating;
  });
  std::size_t kept = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const bool last_of_pair = i + 1 == records.size() ||
                              records[i + 1].consumer_id != records[i].consumer_id ||
                              records[i + 1].product_id != records[i].product_id;
    if (last_of_pair) records[kept++] = records[i];
  }
  table.duplicates_removed_ = records.size() - kept;
  records.resize(kept);
  records.shrink_to_fit();
  table.records_ = std::move(records);
  const auto& recs = table.records_;

  for (const auto& r : recs) {
    if (table.consumer_ids_.empty() || table.consumer_ids_.back() != r.consumer_id) {
      table.consumer_ids_.push_back(r.consumer_id);
      table.consumer_offsets_.push_back(&r - recs.data());
    }
    table.product_ids_.push_back(r.product_id);
  }
  table.consumer_offsets_.push_back(recs.size());
  std::sort(table.product_ids_.begin(), table.product_ids_.end());
  table.product_ids_.erase(std::unique(table.product_ids_.begin(), table.product_ids_.end()),
                           table.product_ids_.end());

  const std::size_t n_products = table.product_ids_.size();
  table.by_consumer_.resize(recs.size());
  std::vector<std::size_t> product_counts(n_products, 0);
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const auto p = static_cast<std::uint32_t>(
        std::lower_bound(table.product_ids_.begin(), table.product_ids_.end(), recs[i].product_id) -
        table.product_ids_.begin());
    table.by_consumer_[i] = {p, static_cast<float>(recs[i].rating)};
    ++product_counts[p];
  }

  table.product_offsets_.assign(n_products + 1, 0);
  for (std::size_t p = 0; p < n_products; ++p) {
    table.product_offsets_[p + 1] = table.product_offsets_[p] + product_counts[p];
  }
  table.by_product_.resize(recs.size());
  std::vector<std::size_t> cursor(table.product_offsets_.begin(), table.product_offsets_.end() - 1);
  for (std::size_t c = 0; c + 1 < table.consumer_offsets_.size(); ++c) {
    for (std::size_t i = table.consumer_offsets_[c]; i < table.consumer_offsets_[c + 1]; ++i) {
      const auto& e = table.by_consumer_[i];
      table.by_product_[cursor[e.product]++] = {static_cast<std::uint32_t>(c), e.rating};
    }
  }

  table.product_means_.resize(n_products);
  table.product_histograms_.assign(n_products, RatingHistogram{});
  for (std::size_t p = 0; p < n_products; ++p) {
    double sum = 0.0;
    for (const auto& e : table.product_ratings(p)) {
      sum += e.rating;
      ++table.product_histograms_[p][rating_slot(e.rating)];
    }
    table.product_means_[p] = sum / static_cast<double>(product_counts[p]);
  }
  return table;
}

std::optional<std::size_t> RatingTable::find_consumer(std::uint32_t consumer_id) const noexcept {
  const auto it = std::lower_bound(consumer_ids_.begin(), consumer_ids_.end(), consumer_id);
  if (it == consumer_ids_.end() || *it != consumer_id) return std::nullopt;
  return static_cast<std::size_t>(it - consumer_ids_.begin());
}

std::optional<std::size_t> RatingTable::find_product(std::uint32_t product_id) const noexcept {
  const auto it = std::lower_bound(product_ids_.begin(), product_ids_.end(), product_id);
  if (it == product_ids_.end() || *it != product_id) return std::nullopt;
  return static_cast<std::size_t>(it - product_ids_.begin());
}

std::size_t RatingTable::consumer_index(std::uint32_t consumer_id) const {
  if (auto idx = find_consumer(consumer_id)) return *idx;
  throw LookupError("unknown consumer " + std::to_string(consumer_id));
}

std::size_t RatingTable::product_index(std::uint32_t product_id) const {
  if (auto idx = find_product(product_id)) return *idx;
  throw LookupError("unknown product " + std::to_string(product_id));
}

std::span<const ConsumerEntry> RatingTable::consumer_ratings(std::size_t consumer) const {
  return std::span<const ConsumerEntry>(by_consumer_)
      .subspan(consumer_offsets_[consumer],
               consumer_offsets_[consumer + 1] - consumer_offsets_[consumer]);
}

std::span<const ProductEntry> RatingTable::product_ratings(std::size_t product) const {
  return std::span<const ProductEntry>(by_product_)
      .subspan(product_offsets_[product],
               product_offsets_[product + 1] - product_offsets_[product]);
}

bool RatingTable::is_level(double rating) const noexcept {
  return std::any_of(levels_.begin(), levels_.end(),
                     [rating](double level) { return std::abs(level - rating) < 1e-9; });
}

namespace {

constexpr std::string_view kCsvHeader = "consumer_id,product_id,rating,timestamp";

std::uint32_t parse_id(std::string_view field, std::size_t line_no, std::string_view line,
                       const char* what) {
  unsigned long long value = 0;
  if (!parse_uint(field, value) || value == 0 ||
      value > std::numeric_limits<std::uint32_t>::max()) {
    throw ParseError(line_no, std::string(line), std::string("invalid ") + what);
  }
  return static_cast<std::uint32_t>(value);
}

RatingRecord parse_fields(const std::vector<std::string_view>& fields, std::size_t line_no,
                          std::string_view line) {
  if (fields.size() != 4) {
    throw ParseError(line_no, std::string(line),
                     "expected 4 fields, found " + std::to_string(fields.size()));
  }
  RatingRecord rec;
  rec.consumer_id = parse_id(fields[0], line_no, line, "consumer id");
  rec.product_id = parse_id(fields[1], line_no, line, "product id");
  if (!parse_double(fields[2], rec.rating)) {
    throw ParseError(line_no, std::string(line), "invalid rating");
  }
  if (rec.rating < kMinRating || rec.rating > kMaxRating) {
    throw RangeError("line " + std::to_string(line_no) + ": rating " + std::string(fields[2]) +
                     " outside [0.5, 5.0]");
  }
  if (std::abs(rec.rating * 2.0 - std::round(rec.rating * 2.0)) > 1e-9) {
    throw ParseError(line_no, std::string(line), "rating is not a multiple of 0.5");
  }
  rec.rating = std::round(rec.rating * 2.0) / 2.0;
  long long ts = 0;
  if (!parse_int(fields[3], ts)) {
    throw ParseError(line_no, std::string(line), "invalid timestamp");
  }
  if (ts < 0) {
    throw RangeError("line " + std::to_string(line_no) + ": negative timestamp");
  }
  rec.timestamp = ts;
  return rec;
}

}  // namespace

RatingTable parse_ratings(std::string_view text, RatingFormat format) {
  std::vector<RatingRecord> records;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool header_seen = format != RatingFormat::Csv;
  const std::string_view separator = format == RatingFormat::Ml100k ? "\t"
                                     : format == RatingFormat::Ml1m ? "::"
                                                                    : ",";
  if (text.substr(0, 3) == "\xEF\xBB\xBF") pos = 3;

  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) continue;

    if (!header_seen) {
      if (line != kCsvHeader) {
        throw ParseError(line_no, std::string(line),
                         "expected header '" + std::string(kCsvHeader) + "'");
      }
      header_seen = true;
      continue;
    }
    records.push_back(parse_fields(split(line, separator), line_no, line));
  }

  if (records.empty()) {
    throw EmptyInputError("ratings input contains no records");
  }

  std::vector<double> levels = integer_levels();
  if (format == RatingFormat::Csv) {
    const bool half = std::any_of(records.begin(), records.end(), [](const RatingRecord& r) {
      return r.rating != std::floor(r.rating);
    });
    if (half) levels = half_star_levels();
  }
  return RatingTable::build(std::move(records), std::move(levels));
}

RatingTable parse_ratings(std::istream& in, RatingFormat format) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (in.bad()) throw DataError("failed to read ratings stream");
  return parse_ratings(std::string_view(text), format);
}

RatingTable load_ratings(const std::filesystem::path& path, RatingFormat format) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw DataError("file not found: " + path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::string text;
  text.resize(static_cast<std::size_t>(std::filesystem::file_size(path)));
  in.read(text.data(), static_cast<std::streamsize>(text.size()));
  text.resize(static_cast<std::size_t>(in.gcount()));
  return parse_ratings(std::string_view(text), format);
}

DatasetStats dataset_stats(const RatingTable& table) {
  return {table.consumer_count(), table.product_count(), table.size()};
}

ValidationReport validate(const RatingTable& table) {
  constexpr std::size_t kMaxSamples = 10;
  ValidationReport report;
  report.duplicates_removed = table.duplicates_removed();
  for (const auto& r : table.records()) {
    if (!table.is_level(r.rating)) {
      ++report.out_of_level_count;
      if (report.out_of_level_samples.size() < kMaxSamples) report.out_of_level_samples.push_back(r);
    }
    report.min_timestamp = std::min(report.min_timestamp.value_or(r.timestamp), r.timestamp);
    report.max_timestamp = std::max(report.max_timestamp.value_or(r.timestamp), r.timestamp);
  }
  return report;
}

void write_csv(const RatingTable& table, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& r : table.records()) {
    out << r.consumer_id << ',' << r.product_id << ',' << format_g9(r.rating) << ','
        << r.timestamp << '\n';
  }
}

}  // namespace repagg
