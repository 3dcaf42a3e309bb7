#include "repagg/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include <json.hpp>

#include "repagg/error.hpp"
#include "repagg/format.hpp"

namespace repagg {

double mae(const RatingTable& table, const ProductScoreTable& scores) {
  if (table.product_count() == 0) throw EmptyInputError("MAE of an empty table");
  const auto listed = scores.scores();
  std::size_t s = 0;
  double total = 0.0;
  for (std::size_t p = 0; p < table.product_count(); ++p) {
    const auto id = table.product_ids()[p];
    while (s < listed.size() && listed[s].product_id < id) ++s;
    if (s == listed.size() || listed[s].product_id != id) {
      throw DataError("product " + std::to_string(id) + " has ratings but no score");
    }
    const double score = listed[s].score;
    const auto ratings = table.product_ratings(p);
    double err = 0.0;
    for (const auto& e : ratings) err += std::abs(e.rating - score);
    total += err / static_cast<double>(ratings.size());
  }
  return total / static_cast<double>(table.product_count());
}

namespace {

std::int64_t tied_pairs(std::span<const double> sorted) {
  std::int64_t ties = 0;
  std::size_t run = 1;
  for (std::size_t i = 1; i <= sorted.size(); ++i) {
    if (i < sorted.size() && sorted[i] == sorted[i - 1]) {
      ++run;
    } else {
      ties += static_cast<std::int64_t>(run) * static_cast<std::int64_t>(run - 1) / 2;
      run = 1;
    }
  }
  return ties;
}

// Stable merge sort of `v`, returning the number of inversions removed.
std::int64_t merge_count(std::vector<double>& v, std::vector<double>& buffer, std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t swaps = merge_count(v, buffer, lo, mid) + merge_count(v, buffer, mid, hi);
  std::size_t i = lo;
  std::size_t j = mid;
  std::size_t k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      swaps += static_cast<std::int64_t>(mid - i);
      buffer[k++] = v[j++];
    } else {
      buffer[k++] = v[i++];
    }
  }
  while (i < mid) buffer[k++] = v[i++];
  while (j < hi) buffer[k++] = v[j++];
  std::copy(buffer.begin() + static_cast<std::ptrdiff_t>(lo), buffer.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return swaps;
}

}  // namespace

double kendall_tau_b(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ConfigError("kendall tau needs equally sized inputs");
  const std::size_t n = a.size();
  if (n < 2) throw ConfigError("kendall tau needs at least two items");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a[x] != a[y] ? a[x] < a[y] : b[x] < b[y];
  });

  std::int64_t ties_a = 0;
  std::int64_t ties_joint = 0;
  std::vector<double> by_a(n);
  std::vector<double> b_sorted(n);
  for (std::size_t i = 0; i < n; ++i) {
    by_a[i] = a[order[i]];
    b_sorted[i] = b[order[i]];
  }
  ties_a = tied_pairs(by_a);
  {
    std::size_t run = 1;
    for (std::size_t i = 1; i <= n; ++i) {
      if (i < n && by_a[i] == by_a[i - 1] && b_sorted[i] == b_sorted[i - 1]) {
        ++run;
      } else {
        ties_joint += static_cast<std::int64_t>(run) * static_cast<std::int64_t>(run - 1) / 2;
        run = 1;
      }
    }
  }
  std::vector<double> buffer(n);
  const std::int64_t swaps = merge_count(b_sorted, buffer, 0, n);
  const std::int64_t ties_b = tied_pairs(b_sorted);

  const std::int64_t pairs = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
  const std::int64_t untied_a = pairs - ties_a;
  const std::int64_t untied_b = pairs - ties_b;
  if (untied_a == 0 || untied_b == 0) return untied_a == untied_b ? 1.0 : 0.0;
  const std::int64_t concordant_minus_discordant = pairs - ties_a - ties_b + ties_joint - 2 * swaps;
  const double tau = static_cast<double>(concordant_minus_discordant) /
                     std::sqrt(static_cast<double>(untied_a) * static_cast<double>(untied_b));
  return std::clamp(tau, -1.0, 1.0);
}

double kendall_tau(std::span<const ProductScore> a, std::span<const ProductScore> b) {
  if (a.size() != b.size()) throw DataError("kendall tau over different product sets");
  auto by_id = [](std::span<const ProductScore> s) {
    std::vector<ProductScore> v(s.begin(), s.end());
    std::sort(v.begin(), v.end(), [](const ProductScore& x, const ProductScore& y) { return x.product_id < y.product_id; });
    return v;
  };
  const auto sa = by_id(a);
  const auto sb = by_id(b);
  std::vector<double> va(sa.size());
  std::vector<double> vb(sb.size());
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (sa[i].product_id != sb[i].product_id) throw DataError("kendall tau over different product sets");
    va[i] = sa[i].score;
    vb[i] = sb[i].score;
  }
  return kendall_tau_b(va, vb);
}

std::vector<int> default_thresholds() { return {1, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100}; }

KendallCurve topk_tau_curve(const ProductScoreTable& reference, const ProductScoreTable& other,
                            std::span<const int> thresholds) {
  const auto defaults = default_thresholds();
  if (thresholds.empty()) thresholds = defaults;
  const auto ref = reference.scores();
  const auto oth = other.scores();
  if (ref.size() != oth.size()) throw DataError("score tables cover different product sets");
  for (std::size_t i = 0; i < ref.size(); ++i) {
    if (ref[i].product_id != oth[i].product_id) throw DataError("score tables cover different product sets");
  }
  if (ref.size() < 10) throw DataError("top-k tau curve needs at least 10 products");

  std::vector<std::size_t> order(ref.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return ref[x].score != ref[y].score ? ref[x].score > ref[y].score : ref[x].product_id < ref[y].product_id;
  });

  KendallCurve curve{reference.method(), other.method(), {}};
  int previous = 0;
  for (int pct : thresholds) {
    if (pct <= previous || pct > 100) throw ConfigError("thresholds must be strictly increasing within (0, 100]");
    previous = pct;
    const std::size_t m = ref.size();
    const std::size_t size = std::max<std::size_t>(2, (static_cast<std::size_t>(pct) * m + 99) / 100);
    std::vector<double> a(size);
    std::vector<double> b(size);
    for (std::size_t i = 0; i < size; ++i) {
      a[i] = ref[order[i]].score;
      b[i] = oth[order[i]].score;
    }
    curve.points.push_back({pct, size, kendall_tau_b(a, b)});
  }
  return curve;
}

std::vector<std::string> rank_models(std::vector<std::pair<std::string, double>> maes) {
  std::sort(maes.begin(), maes.end(), [](const auto& x, const auto& y) {
    return x.second != y.second ? x.second < y.second : x.first < y.first;
  });
  std::vector<std::string> out;
  out.reserve(maes.size());
  for (auto& [name, value] : maes) out.push_back(std::move(name));
  return out;
}

void write_eval_json(const EvalReport& report, std::ostream& out) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["dataset"] = report.dataset;
  j["lambda"] = report.lambda;
  j["seed"] = report.seed;
  ordered_json models = ordered_json::array();
  for (const auto& m : report.models) {
    ordered_json folds = ordered_json::array();
    for (const auto& d : m.fold_diagnostics) {
      folds.push_back({{"fold", d.fold}, {"train_size", d.train_size}, {"test_size", d.test_size}, {"mae", d.mae}});
    }
    models.push_back({{"name", m.name}, {"params", m.params}, {"mae", m.mae}, {"fold_diagnostics", folds}});
  }
  j["models"] = std::move(models);
  j["ranking"] = report.ranking;
  out << j.dump(2) << '\n';
}

void write_kendall_csv(std::span<const KendallCurve> curves, std::ostream& out) {
  out << "reference,other,threshold_pct,set_size,tau\n";
  for (const auto& curve : curves) {
    for (const auto& p : curve.points) {
      out << curve.reference << ',' << curve.other << ',' << p.threshold_pct << ',' << p.set_size << ','
          << format_g9(p.tau) << '\n';
    }
  }
}

}  // namespace repagg
