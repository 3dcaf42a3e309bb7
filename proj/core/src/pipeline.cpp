#include "repagg/pipeline.hpp"

#include <fstream>
#include <ostream>
#include <utility>

#include "repagg/format.hpp"
#include "repagg/learn.hpp"
#include "repagg/profile.hpp"

namespace repagg {

StageError::StageError(std::string stage, int exit_code, const std::string& cause)
    : Error("stage '" + stage + "' failed: " + cause), stage_(std::move(stage)), exit_code_(exit_code) {}

int exit_code_for(const std::exception& error) noexcept {
  if (const auto* stage = dynamic_cast<const StageError*>(&error)) return stage->exit_code();
  if (dynamic_cast<const ConfigError*>(&error)) return kExitUsage;
  if (dynamic_cast<const DataError*>(&error)) return kExitData;
  return kExitInternal;
}

namespace {

template <typename Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, exit_code_for(e), e.what());
  }
}

template <typename Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  writer(out);
  out.flush();
  if (!out) throw DataError("failed writing " + path.string());
}

void prepare_out_dir(const RunConfig& config) {
  std::error_code ec;
  std::filesystem::create_directories(config.out_dir, ec);
  if (ec) throw DataError("cannot create output directory " + config.out_dir.string() + ": " + ec.message());
}

RatingTable load(const RunConfig& config) {
  if (config.dataset.empty()) throw ConfigError("no dataset given (--dataset)");
  return load_ratings(config.dataset, config.format);
}

void log_stats(std::ostream& log, const DatasetStats& s) {
  log << "loaded " << s.rating_count << " ratings from " << s.consumer_count << " consumers on "
      << s.product_count << " products\n";
}

std::string method_file(const std::string& name) { return "scores_" + name + ".csv"; }

}  // namespace

IngestSummary cmd_ingest(const RunConfig& config, std::ostream& out, std::ostream& log) {
  stage("config", [&] { config.validate(); });
  const RatingTable table = stage("ingest", [&] { return load(config); });
  IngestSummary summary{dataset_stats(table), validate(table)};
  out << summary.stats.consumer_count << ' ' << summary.stats.product_count << ' '
      << summary.stats.rating_count << '\n';
  const auto& v = summary.validation;
  log << "duplicates removed: " << v.duplicates_removed << ", out-of-level ratings: " << v.out_of_level_count;
  if (v.min_timestamp) log << ", timestamps " << *v.min_timestamp << ".." << *v.max_timestamp;
  log << '\n';
  stage("output", [&] {
    prepare_out_dir(config);
    write_file(config.out_dir / "ratings.csv", [&](std::ostream& os) { write_csv(table, os); });
  });
  return summary;
}

std::size_t cmd_profile(const RunConfig& config, std::ostream& log) {
  stage("config", [&] { config.validate(); });
  const RatingTable table = stage("ingest", [&] { return load(config); });
  log_stats(log, dataset_stats(table));
  const auto profiles = stage("profile", [&] {
    return build_profiles(table, LambdaConfig{config.lambda}, config.threads);
  });
  stage("output", [&] {
    prepare_out_dir(config);
    write_file(config.out_dir / "profiles.csv", [&](std::ostream& os) { write_profiles_csv(profiles, os); });
  });
  return profiles.size();
}

RunSummary cmd_run(const RunConfig& config, std::ostream& log) {
  stage("config", [&] { config.validate(); });
  stage("output", [&] {
    prepare_out_dir(config);
    write_file(config.out_dir / "run.json", [&](std::ostream& os) { os << config_json(config); });
  });

  const RatingTable table = stage("ingest", [&] { return load(config); });
  RunSummary summary;
  summary.stats = dataset_stats(table);
  log_stats(log, summary.stats);

  const auto profiles = stage("profile", [&] {
    return build_profiles(table, LambdaConfig{config.lambda}, config.threads);
  });
  stage("output", [&] {
    write_file(config.out_dir / "profiles.csv", [&](std::ostream& os) { write_profiles_csv(profiles, os); });
  });

  EvalReport& report = summary.report;
  report.dataset = config.dataset.generic_string();
  report.lambda = config.lambda;
  report.seed = config.seed;
  std::vector<ProductScoreTable> tables;

  if (!config.algorithms.empty()) {
    const ProfileMatrix matrix = stage("scale", [&] { return minmax_scale(profiles); });
    const FoldPlan plan = stage("folds", [&] {
      return kfold_split(table.consumer_ids(), config.k_folds, config.seed);
    });
    CvOptions options;
    options.weight_floor = config.weight_floor;
    options.strict_fold_scaling = config.strict_fold_scaling;
    options.threads = config.threads;

    for (const Algorithm algorithm : config.algorithms) {
      const std::string name(algorithm_name(algorithm));
      const RegressorSpec spec = config.spec_for(algorithm);
      const WeightMap weights = stage("learn", [&] { return predict_weights_cv(matrix, spec, plan, options); });
      ProductScoreTable scores = stage("aggregate", [&] { return score_all(table, weights, name); });
      const double value = stage("evaluate", [&] { return mae(table, scores); });
      log << name << ": mae " << format_g9(value) << '\n';
      stage("output", [&] {
        write_file(config.out_dir / ("weights_" + name + ".csv"), [&](std::ostream& os) { write_weights_csv(weights, os); });
        write_file(config.out_dir / method_file(name), [&](std::ostream& os) { write_scores_csv(scores, os); });
      });
      report.models.push_back({name, spec.describe(), value, weights.diagnostics()});
      tables.push_back(std::move(scores));
    }
  }

  for (const BaselineMethod method : config.baselines) {
    const std::string name(baseline_name(method));
    ProductScoreTable scores = stage("aggregate", [&] { return baseline_scores(table, config.baseline_spec(method)); });
    const double value = stage("evaluate", [&] { return mae(table, scores); });
    log << name << ": mae " << format_g9(value) << '\n';
    stage("output", [&] {
      write_file(config.out_dir / method_file(name), [&](std::ostream& os) { write_scores_csv(scores, os); });
    });
    report.models.push_back({name, scores.method(), value, {}});
    tables.push_back(std::move(scores));
  }

  stage("evaluate", [&] {
    std::vector<std::pair<std::string, double>> maes;
    for (const auto& m : report.models) maes.emplace_back(m.name, m.mae);
    report.ranking = rank_models(std::move(maes));
    if (table.product_count() >= 10) {
      // Each learned model is the reference against every other method.
      for (std::size_t r = 0; r < config.algorithms.size(); ++r) {
        for (std::size_t o = 0; o < tables.size(); ++o) {
          if (o != r) report.curves.push_back(topk_tau_curve(tables[r], tables[o]));
        }
      }
    }
  });
  stage("output", [&] {
    write_file(config.out_dir / "eval.json", [&](std::ostream& os) { write_eval_json(report, os); });
    write_file(config.out_dir / "kendall.csv", [&](std::ostream& os) { write_kendall_csv(report.curves, os); });
  });
  return summary;
}

EvalReport cmd_evaluate(const RunConfig& config, std::span<const std::filesystem::path> score_files,
                        std::ostream& log) {
  stage("config", [&] {
    if (score_files.empty()) throw ConfigError("evaluate needs at least one scores file (--scores)");
  });
  const RatingTable table = stage("ingest", [&] { return load(config); });
  log_stats(log, dataset_stats(table));

  std::vector<ProductScoreTable> tables;
  stage("ingest", [&] {
    for (const auto& path : score_files) {
      std::ifstream in(path, std::ios::binary);
      if (!in) throw DataError("file not found: " + path.string());
      tables.push_back(read_scores_csv(in));
    }
  });

  EvalReport report;
  report.dataset = config.dataset.generic_string();
  report.lambda = config.lambda;
  report.seed = config.seed;
  stage("evaluate", [&] {
    std::vector<std::pair<std::string, double>> maes;
    for (const auto& t : tables) {
      const double value = mae(table, t);
      log << t.method() << ": mae " << format_g9(value) << '\n';
      report.models.push_back({t.method(), t.method(), value, {}});
      maes.emplace_back(t.method(), value);
    }
    report.ranking = rank_models(std::move(maes));
    for (std::size_t o = 1; o < tables.size(); ++o) report.curves.push_back(topk_tau_curve(tables[0], tables[o]));
  });
  stage("output", [&] {
    prepare_out_dir(config);
    write_file(config.out_dir / "eval.json", [&](std::ostream& os) { write_eval_json(report, os); });
    write_file(config.out_dir / "kendall.csv", [&](std::ostream& os) { write_kendall_csv(report.curves, os); });
  });
  return report;
}

}  // namespace repagg
