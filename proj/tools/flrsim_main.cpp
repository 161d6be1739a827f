// flrsim: deterministic federated-learning simulator for training with noisy
// labels. Subcommands: run, validate, compare.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flr/flr.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

flr::ParsedConfig load_config(const std::string& path, const flr::ConfigOverrides& overrides) {
  return flr::parse_and_validate(flr::read_text_file(path), overrides);
}

void print_warnings(const flr::ParsedConfig& parsed) {
  for (const auto& w : parsed.warnings) std::cerr << "warning: " << w << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flrsim - federated training simulator with label-mixture regularization"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::string> preset;
  bool resume = false;
  int stop_after = -1;

  auto* run_cmd = app.add_subcommand("run", "execute one experiment from a config file");
  run_cmd->add_option("config", config_path, "path to the INI config")->required();
  run_cmd->add_option("--seed", seed, "override run.master_seed");
  run_cmd->add_option("--out", out_dir, "override run.out_dir");
  run_cmd->add_option("--preset", preset, "override run.preset (ce, flr, elr, slr, er, fedprox, fedprox+flr)");
  run_cmd->add_flag("--resume", resume, "continue from the latest checkpoint in the run directory");
  run_cmd->add_option("--stop-after", stop_after,
                      "stop after this many rounds (testing aid; checkpoints must be enabled to resume)");

  auto* validate_cmd = app.add_subcommand("validate", "parse and validate a config file");
  validate_cmd->add_option("config", config_path, "path to the INI config")->required();

  std::vector<std::string> compare_dirs;
  std::string compare_csv_path;
  auto* compare_cmd = app.add_subcommand("compare", "summarize completed runs side by side");
  compare_cmd->add_option("dirs", compare_dirs, "run directories")->required()->expected(-2);
  compare_cmd->add_option("--csv", compare_csv_path, "also write the summary as CSV to this path");

  CLI11_PARSE(app, argc, argv);

  flr::ConfigOverrides overrides;
  overrides.master_seed = seed;
  overrides.out_dir = out_dir;
  overrides.preset = preset;

  try {
    if (run_cmd->parsed()) {
      flr::ParsedConfig parsed;
      try {
        parsed = load_config(config_path, overrides);
      } catch (const flr::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
      }
      print_warnings(parsed);
      flr::RunOptions opts;
      opts.resume = resume;
      opts.stop_after_round = stop_after;
      const flr::RunManifest manifest = flr::run(parsed.config, opts);
      std::cout << "run complete: " << manifest.out_dir << "\n"
                << "rounds: " << manifest.rounds_completed
                << "  best test acc: " << flr::format_fixed6(manifest.best_test_acc) << "\n";
      return kExitOk;
    }
    if (validate_cmd->parsed()) {
      try {
        const flr::ParsedConfig parsed = load_config(config_path, overrides);
        print_warnings(parsed);
        std::cout << "config ok: preset " << parsed.config.preset << ", " << parsed.config.partition.num_clients
                  << " clients, " << parsed.config.schedule.total_rounds << " rounds\n";
        return kExitOk;
      } catch (const flr::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
      }
    }
    if (compare_cmd->parsed()) {
      const auto summaries = flr::load_and_check_summaries(compare_dirs);
      std::cout << flr::compare_text(summaries);
      if (!compare_csv_path.empty()) {
        flr::write_text_file(compare_csv_path, flr::compare_csv(summaries));
        std::cout << "csv written to " << compare_csv_path << "\n";
      }
      return kExitOk;
    }
  } catch (const flr::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitRuntime;
}
