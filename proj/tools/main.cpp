// Experiment runner: wires the library modules into the named scenarios and
// emits figure-ready CSV plus report.json.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "manet/csv.hpp"
#include "manet/scenario.hpp"
#include "manet/version.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitRuntimeError = 3;

void print_diagnostics(const manet::ValidationResult& result) {
  for (const auto& d : result.diagnostics)
    std::cerr << "config error: " << d.path << ": " << d.message << "\n";
}

int cmd_validate(const std::string& config_path) {
  const auto result = manet::validate_config(config_path);
  if (!result.ok()) {
    print_diagnostics(result);
    return kExitConfigError;
  }
  // echo the config with every default materialized
  std::cout << manet::resolved_config_json(*result.config);
  return 0;
}

int cmd_run(const std::string& config_path, const std::string& seed_str,
            const std::string& out_dir, int jobs) {
  auto result = manet::validate_config(config_path);
  if (!result.ok()) {
    print_diagnostics(result);
    return kExitConfigError;
  }
  manet::ScenarioConfig config = *result.config;

  if (!seed_str.empty()) {
    try {
      config.seed = std::stoull(seed_str);
    } catch (const std::exception&) {
      std::cerr << "config error: --seed: expected a nonnegative integer\n";
      return kExitConfigError;
    }
  }
  if (!out_dir.empty()) {
    config.output_dir = out_dir;
  } else if (const char* env = std::getenv("MANETGAIN_OUT"); env && *env) {
    config.output_dir = env;
  }
  if (jobs > 0) config.jobs = jobs;

  try {
    const manet::RunOutcome outcome = manet::run_scenario(config);
    std::cout << "scenario " << config.scenario << " seed " << config.seed << "\n";
    for (const auto& f : outcome.files)
      std::cout << "wrote " << (outcome.out_dir / f).string() << "\n";
    for (const auto& report : outcome.reports) {
      for (const auto& e : report.entries)
        std::cout << "  " << e.name << " = " << manet::format_double(e.value) << " " << e.units
                  << "\n";
      for (const auto& n : report.notes) std::cout << "  note: " << n << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return kExitRuntimeError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"analytic models and simulators for predictive routing gain in ad hoc networks"};
  app.set_version_flag("--version", manet::kVersion);
  app.require_subcommand(1);

  std::string config_path, seed_str, out_dir;
  int jobs = 0;

  auto* run = app.add_subcommand("run", "run a scenario from a JSON config");
  run->add_option("config", config_path, "path to config.json")->required();
  run->add_option("--seed", seed_str, "override the config seed");
  run->add_option("--out", out_dir, "output directory (overrides config and MANETGAIN_OUT)");
  run->add_option("--jobs", jobs, "worker threads (outputs are identical for any value)");

  auto* validate = app.add_subcommand("validate", "validate a config and echo it resolved");
  validate->add_option("config", config_path, "path to config.json")->required();

  auto* list = app.add_subcommand("list-scenarios", "list available scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfigError;
  }

  if (list->parsed()) {
    for (const auto& name : manet::scenario_names())
      std::cout << name << "\t" << manet::scenario_description(name) << "\n";
    return 0;
  }
  if (validate->parsed()) return cmd_validate(config_path);
  return cmd_run(config_path, seed_str, out_dir, jobs);
}
