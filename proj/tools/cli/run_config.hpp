#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "vtorus/error.hpp"

namespace vtorus::cli {

/// Usage or configuration problem; always exit status 1.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Everything a subcommand may read. Each subcommand reads only the subset
/// listed in its flag table; the rest keep their zero values.
struct RunConfig {
  std::string command;
  std::filesystem::path config_file;

  // kernel
  std::string kernel;  ///< builtin name or path to a (t, b) CSV
  bool kernel_integrable = false;

  // spectrum
  std::string spectrum;  ///< "parametric", "white" or a CSV path
  double c = 1.0;
  double beta = 1.0;

  int d = 1;
  double alpha = 0.0;
  int n_max = 0;

  // resolvent
  double mu = 0.0;
  double dt = 0.0;
  double horizon = 0.0;
  std::string scheme;

  // admissibility / hypothesis-h
  double tol = 0.0;
  bool force_grid = false;
  double delta = 0.0;
  int lag_min_exp = 0;
  int lag_max_exp = 0;
  double s0 = 0.0;

  // regularity / pairing
  int levels = 0;
  int grid_factor = 0;

  // sobolev
  std::string coefficients;

  // gd
  std::string normalization;
  std::string method;
  int lattice_cut = 0;
  double x_min = 0.0;
  double x_max = 0.0;
  int points = 0;
  std::string spacing;

  // simulate / hoelder
  double t0 = 0.0;
  double time_step = 0.0;
  int n_times = 0;
  double conv_dt = 0.0;
  double memory_horizon = 0.0;
  double tail_mass = 0.0;
  std::uint64_t n_paths = 0;
  std::uint64_t seed = 0;
  std::string zero_mode;
  std::string moments;
  std::string field;
  int field_points = 0;
  int batch = 0;
  bool no_mc = false;

  // uniqueness
  int k_max = 0;
  bool numeric = false;

  // repro
  std::string only;

  std::string output;
  std::string format;
  unsigned threads = 0;

  /// Keys set by the config file or on the command line.
  std::set<std::string> provided;
};

struct FlagInfo {
  std::string name;  ///< without leading dashes, e.g. "n-max"
  std::string default_value;
  std::string help;
  bool is_switch = false;
};

struct CommandInfo {
  std::string name;
  std::string description;
  std::vector<FlagInfo> flags;
};

const std::vector<CommandInfo>& commands();
const CommandInfo& command_info(std::string_view name);

/// Builds the config for `command` from defaults, then the JSON file (keys
/// are flag names with '_' or '-'), then `flag_values` (flag name -> raw
/// text, switches as "true"). Validates and throws ConfigError naming the
/// first offending flag.
RunConfig build_config(std::string_view command, const std::filesystem::path& config_file,
                       const std::vector<std::pair<std::string, std::string>>& flag_values);

/// Full command-line front end: parses argv into a RunConfig. Returns an
/// exit status instead of throwing when CLI parsing fails or help is shown.
struct ParseOutcome {
  bool run = false;
  int exit_code = 0;
  RunConfig config;
};

ParseOutcome parse_config(const std::vector<std::string>& args, std::ostream& out,
                          std::ostream& err);

}  // namespace vtorus::cli
