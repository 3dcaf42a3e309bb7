#include "repagg/config.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "repagg/error.hpp"
#include "repagg/format.hpp"

namespace repagg {

void RunConfig::validate() const {
  if (k_folds < 2) throw ConfigError("k_folds must be >= 2");
  if (!(lambda > 0.0 && lambda < 1.0)) throw ConfigError("lambda must lie in (0, 1)");
  if (algorithms.empty() && baselines.empty()) {
    throw ConfigError("select at least one algorithm or baseline");
  }
  if (!(weight_floor > 0.0 && weight_floor <= 1.0)) throw ConfigError("weight_floor must lie in (0, 1]");
  if (imdb_m && *imdb_m < 0.0) throw ConfigError("imdb_m must be >= 0");
  if (prior_weight < 0.0) throw ConfigError("prior_weight must be >= 0");
  regressor.validate();
}

RegressorSpec RunConfig::spec_for(Algorithm algorithm) const {
  RegressorSpec spec = regressor;
  spec.algorithm = algorithm;
  return spec;
}

BaselineSpec RunConfig::baseline_spec(BaselineMethod method) const {
  return {method, imdb_m, prior_weight};
}

namespace {

std::string normalize_key(std::string_view key) {
  std::string out(trim(key));
  std::replace(out.begin(), out.end(), '-', '_');
  return out;
}

double to_double(std::string_view key, std::string_view value) {
  double out = 0.0;
  if (!parse_double(trim(value), out)) {
    throw ConfigError("invalid number for " + std::string(key) + ": '" + std::string(value) + "'");
  }
  return out;
}

unsigned long long to_uint(std::string_view key, std::string_view value) {
  unsigned long long out = 0;
  if (!parse_uint(trim(value), out)) {
    throw ConfigError("invalid non-negative integer for " + std::string(key) + ": '" + std::string(value) + "'");
  }
  return out;
}

bool to_bool(std::string_view key, std::string_view value) {
  const auto v = trim(value);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("invalid boolean for " + std::string(key) + ": '" + std::string(value) + "'");
}

template <typename T, typename Parse>
std::vector<T> to_list(std::string_view value, Parse&& parse) {
  std::vector<T> out;
  const auto v = trim(value);
  if (v.empty() || v == "none") return out;
  for (auto item : split(v, ",")) {
    const T parsed = parse(trim(item));
    if (std::find(out.begin(), out.end(), parsed) == out.end()) out.push_back(parsed);
  }
  return out;
}

}  // namespace

void apply_setting(RunConfig& config, std::string_view raw_key, std::string_view value) {
  const std::string key = normalize_key(raw_key);
  const std::string_view v = trim(value);
  if (key == "dataset") {
    config.dataset = std::string(v);
  } else if (key == "format") {
    config.format = parse_format(v);
  } else if (key == "lambda") {
    config.lambda = to_double(key, v);
  } else if (key == "algo" || key == "algorithms") {
    config.algorithms = to_list<Algorithm>(v, [](std::string_view s) { return parse_algorithm(s); });
  } else if (key == "baseline" || key == "baselines") {
    config.baselines = to_list<BaselineMethod>(v, [](std::string_view s) { return parse_baseline(s); });
  } else if (key == "k_folds") {
    config.k_folds = static_cast<std::size_t>(to_uint(key, v));
  } else if (key == "seed") {
    config.seed = to_uint(key, v);
  } else if (key == "weight_floor") {
    config.weight_floor = to_double(key, v);
  } else if (key == "strict_fold_scaling") {
    config.strict_fold_scaling = to_bool(key, v);
  } else if (key == "threads") {
    config.threads = static_cast<unsigned>(to_uint(key, v));
  } else if (key == "out") {
    config.out_dir = std::string(v);
  } else if (key == "knn_k") {
    config.regressor.knn_k = static_cast<std::size_t>(to_uint(key, v));
  } else if (key == "svr_c") {
    config.regressor.svr_c = to_double(key, v);
  } else if (key == "svr_epsilon") {
    config.regressor.svr_epsilon = to_double(key, v);
  } else if (key == "svr_gamma") {
    if (v == "auto") {
      config.regressor.svr_gamma.reset();
    } else {
      config.regressor.svr_gamma = to_double(key, v);
    }
  } else if (key == "svr_tolerance") {
    config.regressor.svr_tolerance = to_double(key, v);
  } else if (key == "cart_min_leaf") {
    config.regressor.cart_min_leaf = static_cast<std::size_t>(to_uint(key, v));
  } else if (key == "cart_max_depth") {
    config.regressor.cart_max_depth = static_cast<std::size_t>(to_uint(key, v));
  } else if (key == "lr_log_transform") {
    config.regressor.lr_log_transform = to_bool(key, v);
  } else if (key == "imdb_m") {
    if (v == "auto") {
      config.imdb_m.reset();
    } else {
      config.imdb_m = to_double(key, v);
    }
  } else if (key == "prior_weight") {
    config.prior_weight = to_double(key, v);
  } else {
    throw ConfigError("unknown setting '" + std::string(raw_key) + "'");
  }
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config file not found: " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    try {
      apply_setting(config, view.substr(0, eq), view.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    } catch (const DataError& e) {
      throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

std::string config_json(const RunConfig& config) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["dataset"] = config.dataset.generic_string();
  j["format"] = std::string(format_name(config.format));
  j["lambda"] = config.lambda;
  ordered_json algos = ordered_json::array();
  for (auto a : config.algorithms) algos.push_back(std::string(algorithm_name(a)));
  j["algorithms"] = algos;
  ordered_json baselines = ordered_json::array();
  for (auto b : config.baselines) baselines.push_back(std::string(baseline_name(b)));
  j["baselines"] = baselines;
  j["k_folds"] = config.k_folds;
  j["seed"] = config.seed;
  j["weight_floor"] = config.weight_floor;
  j["strict_fold_scaling"] = config.strict_fold_scaling;
  const auto& r = config.regressor;
  j["knn_k"] = r.knn_k;
  j["knn_metric"] = "euclidean";
  j["svr_c"] = r.svr_c;
  j["svr_epsilon"] = r.svr_epsilon;
  j["svr_gamma"] = r.resolved_gamma(kFeatureCount);
  j["svr_kernel"] = "rbf";
  j["svr_tolerance"] = r.svr_tolerance;
  j["cart_min_leaf"] = r.cart_min_leaf;
  j["cart_max_depth"] = r.cart_max_depth;
  j["lr_log_transform"] = r.lr_log_transform;
  j["lr_ridge_jitter"] = 1e-8;
  if (config.imdb_m) {
    j["imdb_m"] = *config.imdb_m;
  } else {
    j["imdb_m"] = "p25";
  }
  j["prior_weight"] = config.prior_weight;
  return j.dump(2) + "\n";
}

}  // namespace repagg
