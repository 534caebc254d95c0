#ifndef NASH_SENS_DRIVER_H_
#define NASH_SENS_DRIVER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace nash_sens {

inline constexpr const char* kVersion = "0.1.0";

enum class Mode { kNash, kApprox, kSweep, kLimits, kVerify };

const char* ModeName(Mode mode);
// Throws ConfigError for an unknown name.
Mode ParseMode(const std::string& name);

// Validated experiment description. Optional fields are mode-dependent;
// disabled eps2/eps3 are empty.
struct ExperimentConfig {
  Mode mode = Mode::kNash;
  std::string game = "motivating";
  int grid = 201;
  std::optional<double> x;
  std::optional<double> x_min;
  std::optional<double> x_max;
  std::optional<int> x_count;
  std::optional<double> eps1;
  std::optional<double> eps2;
  std::optional<double> eps3;
  std::vector<double> schedule = {0.16, 0.08, 0.04, 0.02, 0.01, 0.005};
  std::optional<std::string> seq;
  double tie_tol = 1e-9;
  std::optional<double> delta;  // default: grid spacing
  int tail_start = -1;          // default: count / 2
  bool closed = false;
  std::string out = ".";
  std::uint64_t seed = 0;
  int threads = 0;  // 0: hardware concurrency

  // Resolved values, echoed into the manifest.
  nlohmann::json ToJson() const;
};

// Validates a JSON object (keys as in ExperimentConfig, "mode" included).
// Throws ConfigError naming the field path ("config.grid") on unknown keys,
// wrong types, out-of-range values, or missing mode-required fields.
ExperimentConfig ParseConfig(const nlohmann::json& doc);

// Parses `json_text` (may be empty) and applies flag overrides given as
// (key, text) pairs; keys use the config spelling ("tie_tol") or the flag
// spelling ("tie-tol").
ExperimentConfig ParseConfig(
    std::string_view json_text,
    const std::vector<std::pair<std::string, std::string>>& overrides);

struct ArtifactDigest {
  std::string path;  // relative to the output directory
  std::string sha256;
};

struct RunManifest {
  nlohmann::json config;
  std::string version = kVersion;
  double wall_seconds = 0.0;
  std::vector<ArtifactDigest> files;
  // 0 on success, 2 if an emitted report has a failing verdict.
  int exit_code = 0;

  nlohmann::json ToJson() const;
};

// Runs the experiment and writes artifacts plus manifest.json into
// config.out. Errors propagate as exceptions.
RunManifest Run(const ExperimentConfig& config);

// Hex SHA-256 of a byte string.
std::string Sha256Hex(std::string_view bytes);

// Command-line entry point; returns the process exit code (0 ok, 1 error,
// 2 failed verdict).
int CliMain(int argc, char** argv);

}  // namespace nash_sens

#endif  // NASH_SENS_DRIVER_H_
