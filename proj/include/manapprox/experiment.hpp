#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "manapprox/geometry.hpp"
#include "manapprox/verify.hpp"

namespace manapprox {

/// Slice y_i = x_j. Indices are 1-based as in the config file.
struct SliceSettings {
  std::size_t i = 1;
  std::size_t j = 1;
  Interval tix{0.0, 0.0};
  std::optional<double> delta_margin;
};

struct ScheduleSettings {
  int k_max = 4;
  double delta0 = 0.4;
  int r0 = 8;
};

struct ToleranceSettings {
  double containment = 1e-2;
  double slack = 1.05;
  double boundary = 1e-9;
};

/// One experiment. Either `functions` (one expression per output component)
/// or a registry name drives the pipeline; explicit functions win.
struct ExperimentConfig {
  std::size_t n;
  std::size_t m;
  Box box;
  Disk disk;
  std::vector<std::string> functions;
  std::optional<std::string> registry;
  std::optional<SliceSettings> slice;
  ScheduleSettings schedule;
  ToleranceSettings tolerances;
  int taps = 4;
  std::string output = "out";
};

/// Names accepted by registry_config and `demo`.
std::vector<std::string> registry_names();

/// Built-in configuration. Throws ConfigError for an unknown name.
ExperimentConfig registry_config(const std::string& name);

/// Reads the JSON schema (see README). A "registry" key supplies defaults that
/// the remaining keys override. Throws ConfigError; also validates.
ExperimentConfig config_from_json(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

nlohmann::json config_to_json(const ExperimentConfig& cfg);

/// Throws ConfigError for schema problems and HypothesisViolation when the
/// slice interval is not strictly inside ix_j.
void validate(const ExperimentConfig& cfg);

enum class Mode { Mesh, Approx, Joint, Verify };

struct RunOptions {
  std::optional<std::filesystem::path> out;
  std::optional<int> k_max;
  bool quiet = false;
};

struct ExperimentOutcome {
  /// 0 pass, 1 check failure, 2 invalid config, 3 internal error.
  int exit_code = 3;
  std::string message;
  std::optional<VerificationReport> report;
  std::filesystem::path out_dir;
};

/// Runs the pipeline and writes clouds.csv (not in verify mode), report.csv,
/// summary.txt and manifest.json into the output directory. All exceptions
/// are mapped to exit codes. The summary goes to `log` unless quiet.
ExperimentOutcome run_experiment(ExperimentConfig cfg, Mode mode, const RunOptions& options,
                                 std::ostream& log);

/// "%.17g".
std::string format_double(double v);

}  // namespace manapprox
