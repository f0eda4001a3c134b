#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "paging/queueing.hpp"
#include "paging/rbf.hpp"
#include "paging/traffic.hpp"

namespace paging {

/// Process exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 2,
  kExitValidationFailed = 3,
  kExitRuntimeError = 4,
};

/// Bad or unreadable configuration; the message names the line or field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct ValidationCell {
  int channels = 1;
  double mean_service_time = 1.0;
  double arrival_rate = 0.5;
};

struct ExperimentConfig {
  std::uint64_t seed = 42;
  std::filesystem::path out_dir = "out";

  PagingSchemeConfig sequential = PagingSchemeConfig::sequential();
  PagingSchemeConfig concurrent = PagingSchemeConfig::concurrent();

  double lambda_min = 0.1;
  double lambda_max = 6.9;
  double lambda_step = 0.1;

  /// Traffic specs; entries without an explicit seed get seed + index.
  std::vector<TrafficSpec> traffic;
  std::vector<bool> traffic_seed_explicit;

  TrainOptions predictor;
  double train_fraction = 0.8;

  std::optional<double> threshold;
  double hysteresis = 0.0;
  double swap_penalty = 0.0;
  bool perfect_oracle = false;
  std::optional<std::filesystem::path> model_dir;

  std::vector<ValidationCell> cells;
  std::size_t min_arrivals = 200000;
  std::optional<double> horizon;
  double warmup_fraction = 0.1;
  int batches = 20;
  double relative_tolerance = 0.02;
  bool write_customer_trace = false;

  static ExperimentConfig defaults();

  /// Traffic spec i with its effective seed.
  TrafficSpec traffic_spec(std::size_t index) const;
};

/// Reads a JSON config. Unknown keys, wrong types and JSON syntax errors
/// raise ConfigError naming the field or line.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Each command writes its artifacts into config.out_dir, prints a short
/// human-readable summary to `log`, and returns an ExitCode.
int cmd_curves(const ExperimentConfig& config, std::ostream& log);
int cmd_train(const ExperimentConfig& config, std::ostream& log);
int cmd_strategy(const ExperimentConfig& config, std::ostream& log);
int cmd_validate(const ExperimentConfig& config, std::ostream& log);

}  // namespace paging
