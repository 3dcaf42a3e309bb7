#pragma once

#include <exception>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "repagg/aggregate.hpp"
#include "repagg/config.hpp"
#include "repagg/error.hpp"
#include "repagg/evaluate.hpp"
#include "repagg/ingest.hpp"

namespace repagg {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitSuccess = 0,
  kExitUsage = 1,
  kExitData = 2,
  kExitInternal = 3,
};

/// A pipeline stage failed; carries the stage name and the exit code of the cause.
class StageError : public Error {
 public:
  StageError(std::string stage, int exit_code, const std::string& cause);

  const std::string& stage() const noexcept { return stage_; }
  int exit_code() const noexcept { return exit_code_; }

 private:
  std::string stage_;
  int exit_code_;
};

int exit_code_for(const std::exception& error) noexcept;

struct IngestSummary {
  DatasetStats stats;
  ValidationReport validation;
};

/// Loads the dataset, prints "consumers products ratings" to `out` and
/// writes ratings.csv under the output directory.
IngestSummary cmd_ingest(const RunConfig& config, std::ostream& out, std::ostream& log);

/// Writes profiles.csv under the output directory; returns the row count.
std::size_t cmd_profile(const RunConfig& config, std::ostream& log);

struct RunSummary {
  DatasetStats stats;
  EvalReport report;
};

/// Full pipeline: ingest, profile, scale, cross-validated weights per
/// algorithm, scores, baselines, evaluation. Writes run.json, profiles.csv,
/// weights_<algo>.csv, scores_<method>.csv, eval.json and kendall.csv.
RunSummary cmd_run(const RunConfig& config, std::ostream& log);

/// Evaluates previously written score files against the dataset. The first
/// file is the reference of the Kendall curves. Writes eval.json and kendall.csv.
EvalReport cmd_evaluate(const RunConfig& config, std::span<const std::filesystem::path> score_files,
                        std::ostream& log);

}  // namespace repagg
