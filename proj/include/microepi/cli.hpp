#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "microepi/marl.hpp"
#include "microepi/scenarios.hpp"
#include "microepi/si.hpp"

namespace microepi::cli {

inline constexpr const char* kVersion = "0.1.0";

enum class Subcommand { simulate, nash, learn, si };

std::string to_string(Subcommand sub);
std::string to_string(ScenarioCase scenario);
ScenarioCase scenario_case_from_string(const std::string& name);

// Stage game query parameters for the `nash` subcommand.
struct NashQuery {
  int infected_count = 1;
  int population = 4;
  double alpha = 1.0;
  bool shaped = false;
};

struct RunConfig {
  Subcommand subcommand = Subcommand::simulate;
  ScenarioSpec scenario;       // simulate
  bool per_run = false;        // simulate: also write the long-format runs CSV
  NashQuery nash_query;        // nash
  marl::TrainConfig train;     // learn
  si::SIParams si_params;      // si
  std::uint64_t seed = 0;      // copied into the active module's config
  std::string out_dir = "out";
};

// Usage problems (bad flags, bad config keys or values, missing required
// inputs). main() maps these to exit code 2; other failures exit 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parses the command line: a subcommand followed by flags. --config loads a
// JSON file whose keys mirror the flag names; precedence is flags over
// config file over built-in defaults, and unknown config keys are rejected.
// The manifest written by every run is itself a valid config file. Returns
// std::nullopt when help was requested (after printing it).
std::optional<RunConfig> parse_args(const std::vector<std::string>& args);

// Runs the configured study and writes its CSV outputs plus manifest.json
// under config.out_dir. Returns the written paths in a fixed order.
std::vector<std::filesystem::path> execute(const RunConfig& config);

// Entry point behind main(): 0 on success, 2 on usage errors, 1 on runtime
// failures.
int run_main(const std::vector<std::string>& args);

}  // namespace microepi::cli
