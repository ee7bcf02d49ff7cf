#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ergopt/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"ergopt: ergodic maximizing values, sub-actions and "
               "maximizing measures for truncated countable Markov shifts"};
  app.require_subcommand(1);

  std::string config_path;
  std::string subaction_path;
  std::optional<std::string> emit_path;
  std::optional<std::string> csv_dir;
  std::optional<std::string> mode;
  std::optional<int> window;
  std::optional<std::string> eta;
  std::optional<int> horizon;
  std::optional<std::string> margin;
  int seeds = 25;

  CLI::App* analyze = app.add_subcommand(
      "analyze", "run the full pipeline and emit the audited report");
  analyze->add_option("config", config_path, "analysis config (JSON)")
      ->required();
  analyze->add_option("--emit", emit_path, "write the report to this path");
  analyze->add_option("--csv", csv_dir, "write CSV side tables into this dir");
  analyze->add_option("--mode", mode, "exact|float (overrides the config)");
  analyze->add_option("--plateau-window", window, "plateau scan window");
  analyze->add_option("--eta", eta, "support-bound eta as p/q");
  analyze->add_option("--horizon", horizon, "finite-horizon table size");
  analyze->add_option("--margin", margin, "strictness margin (float mode)");

  CLI::App* verify = app.add_subcommand(
      "verify", "audit an external sub-action certificate");
  verify->add_option("config", config_path, "analysis config (JSON)")
      ->required();
  verify->add_option("subaction", subaction_path, "sub-action file (JSON)")
      ->required();

  CLI::App* oracle = app.add_subcommand(
      "oracle", "compare fast kernels against brute-force references");
  oracle->add_option("config", config_path, "analysis config (JSON)")
      ->required();
  oracle->add_option("--seeds", seeds, "number of extra random instances");

  CLI11_PARSE(app, argc, argv);

  ergopt::RunResult result;
  if (analyze->parsed()) {
    nlohmann::json overrides = nlohmann::json::object();
    if (mode) overrides["mode"] = *mode;
    if (window) overrides["plateau_window"] = *window;
    if (eta) overrides["eta"] = *eta;
    if (horizon) overrides["horizon"] = *horizon;
    if (margin) overrides["margin"] = *margin;
    result = ergopt::run_analyze(config_path, emit_path, csv_dir, overrides);
  } else if (verify->parsed()) {
    result = ergopt::run_verify(config_path, subaction_path);
  } else {
    result = ergopt::run_oracle(config_path, seeds);
  }
  std::cout << result.output.dump(2) << "\n";
  return result.exit_code;
}
