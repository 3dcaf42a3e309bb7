#include "repagg/aggregate.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <ostream>

#include "repagg/error.hpp"
#include "repagg/format.hpp"

namespace repagg {

ProductScoreTable::ProductScoreTable(std::string method, std::vector<ProductScore> scores)
    : method_(std::move(method)), scores_(std::move(scores)) {
  std::sort(scores_.begin(), scores_.end(),
            [](const ProductScore& a, const ProductScore& b) { return a.product_id < b.product_id; });
}

std::optional<double> ProductScoreTable::score_of(std::uint32_t product_id) const {
  const auto it = std::lower_bound(
      scores_.begin(), scores_.end(), product_id,
      [](const ProductScore& s, std::uint32_t id) { return s.product_id < id; });
  if (it == scores_.end() || it->product_id != product_id) return std::nullopt;
  return it->score;
}

namespace {

constexpr double kMinWeightSum = 1e-12;

// Weight of each consumer index of `table`.
std::vector<double> weights_by_index(const RatingTable& table, const WeightMap& weights) {
  std::vector<double> out(table.consumer_count());
  const auto entries = weights.entries();
  std::size_t e = 0;
  for (std::size_t c = 0; c < table.consumer_count(); ++c) {
    const auto id = table.consumer_ids()[c];
    while (e < entries.size() && entries[e].consumer_id < id) ++e;
    if (e == entries.size() || entries[e].consumer_id != id) {
      throw DataError("no weight for consumer " + std::to_string(id));
    }
    out[c] = entries[e].weight;
  }
  return out;
}

double weighted_mean(std::span<const ProductEntry> ratings, const std::vector<double>& w) {
  double num = 0.0;
  double den = 0.0;
  double plain = 0.0;
  for (const auto& e : ratings) {
    num += w[e.consumer] * e.rating;
    den += w[e.consumer];
    plain += e.rating;
  }
  if (den < kMinWeightSum) return plain / static_cast<double>(ratings.size());
  return num / den;
}

std::vector<double> sorted_ratings(std::span<const ProductEntry> ratings) {
  std::vector<double> values;
  values.reserve(ratings.size());
  for (const auto& e : ratings) values.push_back(e.rating);
  std::sort(values.begin(), values.end());
  return values;
}

double median_of(std::span<const ProductEntry> ratings) {
  const auto values = sorted_ratings(ratings);
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
}

}  // namespace

double weighted_score(const RatingTable& table, const WeightMap& weights, std::uint32_t product_id) {
  const auto ratings = table.product_ratings(table.product_index(product_id));
  double num = 0.0;
  double den = 0.0;
  double plain = 0.0;
  for (const auto& e : ratings) {
    const auto id = table.consumer_ids()[e.consumer];
    const auto w = weights.weight_of(id);
    if (!w) throw DataError("no weight for consumer " + std::to_string(id));
    num += *w * e.rating;
    den += *w;
    plain += e.rating;
  }
  if (den < kMinWeightSum) return plain / static_cast<double>(ratings.size());
  return num / den;
}

ProductScoreTable score_all(const RatingTable& table, const WeightMap& weights, std::string method) {
  const auto w = weights_by_index(table, weights);
  std::vector<ProductScore> scores;
  scores.reserve(table.product_count());
  for (std::size_t p = 0; p < table.product_count(); ++p) {
    const auto ratings = table.product_ratings(p);
    scores.push_back({table.product_ids()[p], weighted_mean(ratings, w), ratings.size()});
  }
  return ProductScoreTable(std::move(method), std::move(scores));
}

BaselineMethod parse_baseline(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "average") return BaselineMethod::Average;
  if (lower == "median") return BaselineMethod::Median;
  if (lower == "imdb") return BaselineMethod::Imdb;
  if (lower == "bayesian") return BaselineMethod::Bayesian;
  if (lower == "dirichlet") return BaselineMethod::Dirichlet;
  throw ConfigError("unknown baseline '" + std::string(name) +
                    "' (expected average, median, imdb, bayesian or dirichlet)");
}

std::string_view baseline_name(BaselineMethod method) {
  switch (method) {
    case BaselineMethod::Average: return "average";
    case BaselineMethod::Median: return "median";
    case BaselineMethod::Imdb: return "imdb";
    case BaselineMethod::Bayesian: return "bayesian";
    case BaselineMethod::Dirichlet: return "dirichlet";
  }
  return "unknown";
}

double default_imdb_m(const RatingTable& table) {
  if (table.product_count() == 0) return 0.0;
  std::vector<double> counts;
  counts.reserve(table.product_count());
  for (std::size_t p = 0; p < table.product_count(); ++p) {
    counts.push_back(static_cast<double>(table.product_ratings(p).size()));
  }
  std::sort(counts.begin(), counts.end());
  const double pos = 0.25 * static_cast<double>(counts.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, counts.size() - 1);
  return counts[lo] + (pos - static_cast<double>(lo)) * (counts[hi] - counts[lo]);
}

double global_mean(const RatingTable& table) {
  if (table.empty()) throw EmptyInputError("global mean of an empty table");
  double sum = 0.0;
  for (const auto& r : table.records()) sum += r.rating;
  return sum / static_cast<double>(table.size());
}

std::string baseline_label(const RatingTable& table, const BaselineSpec& spec) {
  switch (spec.method) {
    case BaselineMethod::Average:
    case BaselineMethod::Median:
      return std::string(baseline_name(spec.method));
    case BaselineMethod::Imdb:
      return "imdb(m=" + format_g9(spec.imdb_m.value_or(default_imdb_m(table))) + ")";
    case BaselineMethod::Bayesian:
      return "bayesian(C=" + format_g9(spec.prior_weight) + ")";
    case BaselineMethod::Dirichlet:
      return "dirichlet(C=" + format_g9(spec.prior_weight) + ")";
  }
  return {};
}

ProductScoreTable baseline_scores(const RatingTable& table, const BaselineSpec& spec) {
  if (table.empty()) throw EmptyInputError("baseline scores of an empty table");
  if (spec.prior_weight < 0.0) throw ConfigError("prior weight C must be >= 0");
  const double cg = global_mean(table);
  const double m = spec.imdb_m.value_or(default_imdb_m(table));
  if (m < 0.0) throw ConfigError("imdb_m must be >= 0");
  const double c = spec.prior_weight;
  const auto levels = table.rating_levels();
  double level_mean = 0.0;
  for (double x : levels) level_mean += x;
  level_mean /= static_cast<double>(levels.size());

  std::vector<ProductScore> scores;
  scores.reserve(table.product_count());
  for (std::size_t p = 0; p < table.product_count(); ++p) {
    const auto ratings = table.product_ratings(p);
    const auto v = static_cast<double>(ratings.size());
    const double mean = table.product_mean(p);
    double score = 0.0;
    switch (spec.method) {
      case BaselineMethod::Average:
        score = mean;
        break;
      case BaselineMethod::Median:
        score = median_of(ratings);
        break;
      case BaselineMethod::Imdb:
        score = (v / (v + m)) * mean + (m / (v + m)) * cg;
        break;
      case BaselineMethod::Bayesian:
        score = (c * cg + mean * v) / (c + v);
        break;
      case BaselineMethod::Dirichlet: {
        // Expected rating under a multinomial Dirichlet posterior with a
        // uniform base rate 1/L over the admissible levels. Observed counts
        // enter through their rating values, so off-level ratings still count.
        double observed = 0.0;
        const auto& hist = table.product_histogram(p);
        for (std::size_t s = 0; s < kRatingSlots; ++s) observed += static_cast<double>(hist[s]) * slot_rating(s);
        score = (observed + c * level_mean) / (v + c);
        break;
      }
    }
    scores.push_back({table.product_ids()[p], score, ratings.size()});
  }
  return ProductScoreTable(baseline_label(table, spec), std::move(scores));
}

void write_scores_csv(const ProductScoreTable& scores, std::ostream& out) {
  out << "product_id,score,n_ratings,method\n";
  for (const auto& s : scores.scores()) {
    out << s.product_id << ',' << format_g9(s.score) << ',' << s.n_ratings << ',' << scores.method() << '\n';
  }
}

ProductScoreTable read_scores_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::string method;
  std::vector<ProductScore> scores;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    if (!header) {
      if (line != "product_id,score,n_ratings,method") {
        throw ParseError(line_no, line, "expected scores header");
      }
      header = true;
      continue;
    }
    // Everything after the third comma is the method label.
    auto fields = split(line, ",");
    if (fields.size() < 4) throw ParseError(line_no, line, "expected 4 fields");
    unsigned long long id = 0;
    unsigned long long n = 0;
    double score = 0.0;
    if (!parse_uint(fields[0], id) || id == 0 || id > 0xFFFFFFFFull) throw ParseError(line_no, line, "invalid product id");
    if (!parse_double(fields[1], score)) throw ParseError(line_no, line, "invalid score");
    if (!parse_uint(fields[2], n)) throw ParseError(line_no, line, "invalid rating count");
    const auto label_start = fields[0].size() + fields[1].size() + fields[2].size() + 3;
    const std::string label = line.substr(label_start);
    if (method.empty()) method = label;
    scores.push_back({static_cast<std::uint32_t>(id), score, static_cast<std::size_t>(n)});
  }
  if (!header) throw EmptyInputError("scores input is empty");
  return ProductScoreTable(method, std::move(scores));
}

}  // namespace repagg
