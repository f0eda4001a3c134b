// paging-lab: sequential vs concurrent paging, RBF traffic prediction and
// predicted-load algorithm swapping, reproduced as CSV files plus gnuplot scripts.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "paging/experiment.hpp"

namespace {

constexpr const char* kExitCodeHelp =
    "Exit codes:\n"
    "  0  success\n"
    "  2  usage or configuration error\n"
    "  3  validation failure (analytic and simulated results disagree)\n"
    "  4  runtime error (training, simulation or I/O failure)\n";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intelligent paging laboratory: Erlang-C paging models, RBF load prediction, strategy evaluation"};
  app.footer(kExitCodeHelp);
  app.set_version_flag("--version", std::string("paging-lab ") + PAGING_LAB_VERSION);
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;

  struct Command {
    const char* name;
    const char* help;
    int (*run)(const paging::ExperimentConfig&, std::ostream&);
  };
  const Command commands[] = {
      {"curves", "Wait probability and mean system time curves of both schemes; prints the crossover", paging::cmd_curves},
      {"train", "Train one RBF predictor per traffic type and score it on held-out data", paging::cmd_train},
      {"strategy", "Compare sequential, concurrent and intelligent paging per traffic type", paging::cmd_strategy},
      {"validate", "Cross-check Erlang C against the discrete-event simulator", paging::cmd_validate},
  };
  for (const auto& command : commands) {
    auto* sub = app.add_subcommand(command.name, command.help);
    sub->add_option("--config", config_path, "JSON config file; omitted fields keep their defaults");
    sub->add_option("--seed", seed, "Master seed, overrides the config");
    sub->add_option("--out", out_dir, "Output directory, overrides the config");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? paging::kExitOk : paging::kExitConfigError;
  }

  paging::ExperimentConfig config;
  try {
    config = config_path.empty() ? paging::ExperimentConfig::defaults() : paging::load_config(config_path);
  } catch (const paging::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return paging::kExitConfigError;
  }
  if (seed) config.seed = *seed;
  if (!out_dir.empty()) config.out_dir = out_dir;

  for (const auto& command : commands) {
    if (!app.got_subcommand(command.name)) continue;
    try {
      return command.run(config, std::cout);
    } catch (const paging::ConfigError& e) {
      std::cerr << "config error: " << e.what() << '\n';
      return paging::kExitConfigError;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return paging::kExitRuntimeError;
    }
  }
  return paging::kExitConfigError;
}
