// Command-line front end: mesh, approx, joint, verify and demo subcommands.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "manapprox/errors.hpp"
#include "manapprox/experiment.hpp"

namespace {

using manapprox::ExperimentConfig;
using manapprox::Mode;

struct CommonFlags {
  std::string config;
  std::string out;
  int k_max = -1;
  long long seed = 0;
  bool quiet = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool config_required) {
  auto* c = cmd->add_option("--config", flags.config, "experiment JSON file");
  if (config_required) c->required();
  cmd->add_option("--out", flags.out, "output directory (overrides the config)");
  cmd->add_option("--k-max", flags.k_max, "largest sequence index (overrides the config)")
      ->check(CLI::Range(0, 20));
  cmd->add_option("--seed", flags.seed, "reserved; every pipeline is deterministic");
  cmd->add_flag("--quiet", flags.quiet, "do not print the summary");
}

int finish(const ExperimentConfig& cfg, Mode mode, const CommonFlags& flags) {
  manapprox::RunOptions opts;
  if (!flags.out.empty()) opts.out = flags.out;
  if (flags.k_max >= 0) opts.k_max = flags.k_max;
  opts.quiet = flags.quiet;
  auto outcome = manapprox::run_experiment(cfg, mode, opts, std::cout);
  if (outcome.exit_code != 0 || !flags.quiet) {
    (outcome.exit_code == 0 ? std::cout : std::cerr) << outcome.message << "\n";
  }
  return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Manifold approximations of set-valued maps"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string demo_name;
  struct Entry {
    const char* name;
    Mode mode;
    const char* help;
  };
  const Entry entries[] = {
      {"mesh", Mode::Mesh, "emit the disk meshes M^(k)"},
      {"approx", Mode::Approx, "build and check the smoothed graph sequence"},
      {"joint", Mode::Joint, "slice the sequence along y_i = x_j"},
      {"verify", Mode::Verify, "run the checks without writing point clouds"},
  };
  std::vector<std::pair<CLI::App*, Mode>> commands;
  for (const auto& e : entries) {
    CLI::App* cmd = app.add_subcommand(e.name, e.help);
    add_common(cmd, flags, true);
    commands.emplace_back(cmd, e.mode);
  }
  CLI::App* demo = app.add_subcommand("demo", "run a built-in experiment");
  demo->add_option("name", demo_name, "registry name")->required();
  add_common(demo, flags, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (demo->parsed()) {
      ExperimentConfig cfg = flags.config.empty() ? manapprox::registry_config(demo_name)
                                                  : manapprox::load_config(flags.config);
      if (!flags.config.empty() && cfg.registry != demo_name) {
        throw manapprox::ConfigError("config does not describe registry entry '" + demo_name +
                                     "'");
      }
      return finish(cfg, cfg.slice ? Mode::Joint : Mode::Approx, flags);
    }
    for (const auto& [cmd, mode] : commands) {
      if (cmd->parsed()) return finish(manapprox::load_config(flags.config), mode, flags);
    }
  } catch (const manapprox::ConfigError& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return 2;
  } catch (const manapprox::HypothesisViolation& e) {
    std::cerr << "hypothesis violation: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
