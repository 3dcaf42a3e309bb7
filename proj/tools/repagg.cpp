// repagg: reputation aggregation pipeline driver.
//
//   repagg ingest   --dataset u.data --format ml-100k --out out/
//   repagg profile  --dataset u.data --format ml-100k --out out/
//   repagg run      --dataset u.data --format ml-100k --out out/
//   repagg evaluate --dataset u.data --format ml-100k --scores a.csv,b.csv --out out/

#include <filesystem>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "repagg/config.hpp"
#include "repagg/format.hpp"
#include "repagg/pipeline.hpp"

namespace {

struct FlagValues {
  std::vector<std::pair<std::string, std::string>> settings;
  std::string config_file;
  std::string scores;
  bool strict = false;
};

// Every flag is captured as text and applied through apply_setting, so flags
// and config files share one parser. Flags are applied after the config file.
void add_common_flags(CLI::App& cmd, FlagValues& values, std::vector<std::pair<std::string, CLI::Option*>>& opts,
                      std::vector<std::string>& storage) {
  static const std::vector<std::pair<std::string, std::string>> kFlags = {
      {"dataset", "Ratings file"},
      {"format", "ml-100k | ml-1m | csv"},
      {"lambda", "Fading factor in (0,1)"},
      {"algo", "Comma list of lr,rt,svr,knn (or none)"},
      {"baseline", "Comma list of average,median,imdb,bayesian,dirichlet (or none)"},
      {"k-folds", "Cross-validation folds"},
      {"seed", "Fold shuffling seed"},
      {"weight-floor", "Lowest aggregation weight"},
      {"threads", "Worker threads (0 = all cores)"},
      {"out", "Output directory"},
      {"knn-k", "KNN neighbour count"},
      {"svr-c", "SVR penalty C"},
      {"svr-epsilon", "SVR tube half-width"},
      {"svr-gamma", "SVR RBF width (or auto)"},
      {"svr-tolerance", "SVR KKT tolerance"},
      {"cart-min-leaf", "Minimum rows per tree leaf"},
      {"cart-max-depth", "Maximum tree depth"},
      {"lr-log-transform", "log(1+v) on count features for LR (true/false)"},
      {"imdb-m", "IMDb minimum votes (or auto)"},
      {"prior-weight", "Prior strength C for bayesian/dirichlet"},
  };
  storage.reserve(kFlags.size());
  for (const auto& [name, help] : kFlags) {
    storage.emplace_back();
    opts.emplace_back(name, cmd.add_option("--" + name, storage.back(), help));
  }
  cmd.add_flag("--strict-fold-scaling", values.strict, "Fit Min-Max scaling per training fold");
  cmd.add_option("--config", values.config_file, "key = value config file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reputation aggregation with learned consumer reliability weights"};
  app.require_subcommand(1);

  struct Sub {
    CLI::App* cmd;
    FlagValues values;
    std::vector<std::pair<std::string, CLI::Option*>> opts;
    std::vector<std::string> storage;
  };
  std::vector<std::unique_ptr<Sub>> subs;
  auto make = [&](const char* name, const char* help) -> Sub& {
    auto sub = std::make_unique<Sub>();
    sub->cmd = app.add_subcommand(name, help);
    add_common_flags(*sub->cmd, sub->values, sub->opts, sub->storage);
    subs.push_back(std::move(sub));
    return *subs.back();
  };
  Sub& ingest = make("ingest", "Parse a ratings file, print dataset statistics, write canonical csv");
  Sub& profile = make("profile", "Extract consumer profiles to profiles.csv");
  Sub& run = make("run", "Run the full pipeline and write every artifact");
  Sub& evaluate = make("evaluate", "Evaluate previously written score files");
  evaluate.cmd->add_option("--scores", evaluate.values.scores, "Comma list of scores CSV files; first is the reference")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? repagg::kExitSuccess : repagg::kExitUsage;
  }

  Sub* active = nullptr;
  for (auto& s : subs) {
    if (s->cmd->parsed()) active = s.get();
  }

  try {
    repagg::RunConfig config;
    if (!active->values.config_file.empty()) repagg::apply_config_file(config, active->values.config_file);
    for (const auto& [name, opt] : active->opts) {
      if (opt->count() > 0) repagg::apply_setting(config, name, opt->as<std::string>());
    }
    if (active->values.strict) config.strict_fold_scaling = true;

    if (active == &ingest) {
      repagg::cmd_ingest(config, std::cout, std::cerr);
    } else if (active == &profile) {
      const auto rows = repagg::cmd_profile(config, std::cerr);
      std::cerr << "wrote " << rows << " profiles to " << (config.out_dir / "profiles.csv").string() << '\n';
    } else if (active == &run) {
      const auto summary = repagg::cmd_run(config, std::cerr);
      std::cout << "ranking:";
      for (const auto& name : summary.report.ranking) std::cout << ' ' << name;
      std::cout << '\n';
    } else {
      std::vector<std::filesystem::path> files;
      for (auto item : repagg::split(active->values.scores, ",")) files.emplace_back(std::string(repagg::trim(item)));
      const auto report = repagg::cmd_evaluate(config, files, std::cerr);
      std::cout << "ranking:";
      for (const auto& name : report.ranking) std::cout << ' ' << name;
      std::cout << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return repagg::exit_code_for(e);
  }
  return repagg::kExitSuccess;
}
