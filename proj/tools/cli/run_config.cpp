#include "run_config.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <variant>

#include "vtorus/green.hpp"
#include "vtorus/simulate.hpp"

namespace vtorus::cli {
namespace {

using Field = std::variant<int RunConfig::*, unsigned RunConfig::*, std::uint64_t RunConfig::*,
                           double RunConfig::*, bool RunConfig::*, std::string RunConfig::*>;

struct FlagDef {
  Field field;
  std::string help;
};

const std::map<std::string, FlagDef>& registry() {
  static const std::map<std::string, FlagDef> r = {
      {"kernel", {&RunConfig::kernel, "memory kernel: one, linear, exp, texp, or a (t,b) CSV path"}},
      {"kernel-integrable",
       {&RunConfig::kernel_integrable, "declare a CSV kernel integrable on [0,inf)"}},
      {"spectrum", {&RunConfig::spectrum, "covariance spectrum: parametric, white, or a CSV path"}},
      {"c", {&RunConfig::c, "spectrum amplitude c"}},
      {"beta", {&RunConfig::beta, "parametric decay: gamma_n = c (1+|n|^2)^-beta"}},
      {"d", {&RunConfig::d, "torus dimension"}},
      {"alpha", {&RunConfig::alpha, "Sobolev index alpha"}},
      {"n-max", {&RunConfig::n_max, "spectral truncation |n|_inf <= n-max"}},
      {"mu", {&RunConfig::mu, "resolvent parameter mu <= 0"}},
      {"dt", {&RunConfig::dt, "resolvent grid step"}},
      {"horizon", {&RunConfig::horizon, "resolvent grid horizon (multiple of dt)"}},
      {"scheme", {&RunConfig::scheme, "numerical scheme"}},
      {"tol", {&RunConfig::tol, "tolerance"}},
      {"force-grid",
       {&RunConfig::force_grid, "solve the resolvent on a grid even when a closed form exists"}},
      {"delta", {&RunConfig::delta, "Hypothesis (H) exponent in (0,1)"}},
      {"lag-min-exp", {&RunConfig::lag_min_exp, "smallest lag is 2^lag-min-exp"}},
      {"lag-max-exp", {&RunConfig::lag_max_exp, "largest lag is 2^lag-max-exp"}},
      {"s0", {&RunConfig::s0, "left end s of every time pair"}},
      {"levels", {&RunConfig::levels, "truncations N = 1, 2, ..., 2^levels (0: by dimension)"}},
      {"grid-factor", {&RunConfig::grid_factor, "quadrature points per axis per unit of N"}},
      {"coefficients",
       {&RunConfig::coefficients, "CSV with columns n_1..n_d, xi1, xi2 (n = 0 row holds xi_0)"}},
      {"normalization", {&RunConfig::normalization, "G_d Gaussian factor: as-printed or standard-heat"}},
      {"method", {&RunConfig::method, "G_d evaluation: quadrature or bessel"}},
      {"lattice-cut", {&RunConfig::lattice_cut, "G_d lattice sum over |n|_inf <= lattice-cut"}},
      {"x-min", {&RunConfig::x_min, "smallest |x| of the scan along the first axis"}},
      {"x-max", {&RunConfig::x_max, "largest |x| of the scan"}},
      {"points", {&RunConfig::points, "number of scan points"}},
      {"spacing", {&RunConfig::spacing, "scan spacing: log or linear"}},
      {"t0", {&RunConfig::t0, "first time point"}},
      {"time-step", {&RunConfig::time_step, "time grid spacing"}},
      {"n-times", {&RunConfig::n_times, "number of time points"}},
      {"conv-dt", {&RunConfig::conv_dt, "stochastic convolution step (divides t0 and time-step)"}},
      {"memory-horizon", {&RunConfig::memory_horizon, "memory horizon (0: smallest passing per mode)"}},
      {"tail-mass", {&RunConfig::tail_mass, "relative resolvent tail mass allowed past the horizon"}},
      {"n-paths", {&RunConfig::n_paths, "number of Monte Carlo paths"}},
      {"seed", {&RunConfig::seed, "64-bit seed"}},
      {"zero-mode", {&RunConfig::zero_mode, "zero-mode policy: stationary or brownian"}},
      {"moments", {&RunConfig::moments, "moment table CSV (default: <output>.moments.csv)"}},
      {"field", {&RunConfig::field, "optional CSV of the field of path 0 at the first time"}},
      {"field-points", {&RunConfig::field_points, "theta points per axis for --field"}},
      {"batch", {&RunConfig::batch, "paths simulated per batch"}},
      {"no-mc", {&RunConfig::no_mc, "skip the Monte Carlo slope"}},
      {"k-max", {&RunConfig::k_max, "scan k in [-k-max, k-max]"}},
      {"numeric", {&RunConfig::numeric, "use quadrature transforms even for builtins"}},
      {"only", {&RunConfig::only, "comma-separated criterion numbers (empty: all)"}},
      {"output", {&RunConfig::output, "output file"}},
      {"format", {&RunConfig::format, "output format: json or csv"}},
      {"threads", {&RunConfig::threads, "worker threads (0: hardware concurrency)"}},
  };
  return r;
}

bool is_switch(const std::string& name) {
  return std::holds_alternative<bool RunConfig::*>(registry().at(name).field);
}

struct Row {
  std::string name;
  std::string default_value;
  std::string help = {};
};

CommandInfo make(std::string name, std::string description, std::vector<Row> rows) {
  CommandInfo info{std::move(name), std::move(description), {}};
  for (auto& row : rows) {
    const auto& def = registry().at(row.name);
    info.flags.push_back({row.name, row.default_value, row.help.empty() ? def.help : row.help,
                          is_switch(row.name)});
  }
  return info;
}

std::vector<Row> kernel_rows() { return {{"kernel", ""}, {"kernel-integrable", "false"}}; }

std::vector<CommandInfo> build_commands() {
  auto join = [](std::vector<Row> a, std::vector<Row> b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  std::vector<CommandInfo> out;
  out.push_back(make("resolvent", "Solve r = b + mu (b * r) on a grid and report its residual",
                     join(kernel_rows(),
                          {{"mu", "-1"},
                           {"dt", "0.001"},
                           {"horizon", "10"},
                           {"scheme", "richardson", "trapezoidal or richardson"},
                           {"output", "resolvent.json"},
                           {"format", "json"}})));
  out.push_back(make("admissibility", "Estimate C_b = lim |n|^2 int r(s,-|n|^2)^2 ds",
                     join(kernel_rows(), {{"n-max", "1024", "largest n of the ladder 2, 4, 8, ..."},
                                          {"tol", "1e-6", "convergence tolerance on C_b"},
                                          {"dt", "0.001", "grid step for kernels without closed form"},
                                          {"force-grid", "false"},
                                          {"threads", "0"},
                                          {"output", "admissibility.json"},
                                          {"format", "json"}})));
  out.push_back(make("hypothesis-h", "Scan both Hypothesis (H) integral bounds",
                     join(kernel_rows(), {{"delta", "0.5"},
                                          {"n-max", "64", "scan n = 1..n-max"},
                                          {"lag-min-exp", "-10"},
                                          {"lag-max-exp", "0"},
                                          {"s0", "0"},
                                          {"dt", "0.001", "grid step for kernels without closed form"},
                                          {"threads", "0"},
                                          {"output", "hypothesis-h.json"},
                                          {"format", "json"}})));
  out.push_back(make("regularity", "Partial sums of sum gamma_n (1+|n|^2)^alpha and their verdict",
                     {{"d", "1"},
                      {"spectrum", "parametric"},
                      {"c", "1"},
                      {"beta", "1"},
                      {"alpha", "0"},
                      {"levels", "0"},
                      {"output", "regularity.json"},
                      {"format", "json"}}));
  out.push_back(make("sobolev", "H^alpha norm of a coefficient table",
                     {{"coefficients", ""}, {"alpha", "0"}, {"output", "sobolev.json"}}));
  out.push_back(make("gd", "Tabulate G_d along the first axis",
                     {{"d", "3"},
                      {"normalization", "as-printed"},
                      {"method", "quadrature"},
                      {"lattice-cut", "4"},
                      {"x-min", "0.01"},
                      {"x-max", "0.1"},
                      {"points", "10"},
                      {"spacing", "log"},
                      {"output", "gd.json"},
                      {"format", "json"}}));
  out.push_back(make("pairing", "Pairing (Gamma_N, G_d) for growing truncations N",
                     {{"d", "1"},
                      {"spectrum", "white"},
                      {"c", "1"},
                      {"beta", "1"},
                      {"levels", "0"},
                      {"grid-factor", "4"},
                      {"lattice-cut", "4"},
                      {"normalization", "as-printed"},
                      {"threads", "0"},
                      {"output", "pairing.json"},
                      {"format", "json"}}));
  out.push_back(make("simulate", "Monte Carlo mode paths written as an ensemble file",
                     join(kernel_rows(), {{"d", "1"},
                                          {"spectrum", "parametric"},
                                          {"c", "1"},
                                          {"beta", "1"},
                                          {"alpha", "-1", "moments are taken in H^{alpha+1}"},
                                          {"n-max", "8"},
                                          {"t0", "1"},
                                          {"time-step", "0.01"},
                                          {"n-times", "16"},
                                          {"conv-dt", "0.001"},
                                          {"memory-horizon", "0"},
                                          {"tail-mass", "1e-10"},
                                          {"n-paths", "100"},
                                          {"seed", "0"},
                                          {"zero-mode", "stationary"},
                                          {"scheme", "convolution", "convolution or exact"},
                                          {"threads", "0"},
                                          {"output", "ensemble.vtens"},
                                          {"moments", ""},
                                          {"field", ""},
                                          {"field-points", "64"}})));
  out.push_back(make("hoelder", "Increment slope of log E||X(t+h)-X(t)||^2 against log h",
                     join(kernel_rows(),
                          {{"d", "1"},
                           {"spectrum", "parametric"},
                           {"c", "1"},
                           {"beta", "1"},
                           {"n-max", "32"},
                           {"lag-min-exp", "-10", "smallest lag 2^lag-min-exp, also the time step"},
                           {"lag-max-exp", "-4"},
                           {"t0", "1"},
                           {"n-times", "0", "time points (0: twice the lag span plus one)"},
                           {"conv-dt", "0", "convolution step (0: a quarter of the smallest lag)"},
                           {"tail-mass", "1e-10"},
                           {"n-paths", "2000"},
                           {"seed", "0"},
                           {"zero-mode", "stationary"},
                           {"batch", "250"},
                           {"no-mc", "false"},
                           {"threads", "0"},
                           {"output", "hoelder.json"},
                           {"format", "json"}})));
  out.push_back(make("uniqueness", "Scan 1/b~(ik) against -|n|^2",
                     join(kernel_rows(), {{"d", "1"},
                                          {"k-max", "64"},
                                          {"n-max", "16"},
                                          {"tol", "1e-9", "violation threshold on the distance"},
                                          {"numeric", "false"},
                                          {"threads", "0"},
                                          {"output", "uniqueness.json"}})));
  out.push_back(make("repro", "Run the acceptance table",
                     {{"only", ""}, {"threads", "0"}, {"output", "repro.json"}}));
  return out;
}

[[noreturn]] void fail(const std::string& flag, const std::string& message) {
  throw ConfigError("--" + flag + ": " + message);
}

template <class T>
T parse_integer(const std::string& flag, const std::string& text) {
  T v{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    fail(flag, "expected an integer, got '" + text + "'");
  }
  return v;
}

double parse_real(const std::string& flag, const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v)) {
    fail(flag, "expected a finite real number, got '" + text + "'");
  }
  return v;
}

bool parse_bool(const std::string& flag, const std::string& text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  fail(flag, "expected true or false, got '" + text + "'");
}

void assign_text(RunConfig& cfg, const std::string& flag, const std::string& text) {
  std::visit(
      [&](auto member) {
        using T = std::remove_reference_t<decltype(cfg.*member)>;
        if constexpr (std::is_same_v<T, std::string>) {
          cfg.*member = text;
        } else if constexpr (std::is_same_v<T, bool>) {
          cfg.*member = parse_bool(flag, text);
        } else if constexpr (std::is_same_v<T, double>) {
          cfg.*member = parse_real(flag, text);
        } else {
          cfg.*member = parse_integer<T>(flag, text);
        }
      },
      registry().at(flag).field);
}

void assign_json(RunConfig& cfg, const std::string& flag, const std::string& key,
                 const nlohmann::json& v) {
  const std::string where = "config key '" + key + "'";
  std::visit(
      [&](auto member) {
        using T = std::remove_reference_t<decltype(cfg.*member)>;
        if constexpr (std::is_same_v<T, std::string>) {
          if (!v.is_string()) fail(flag, where + " must be a string");
          cfg.*member = v.get<std::string>();
        } else if constexpr (std::is_same_v<T, bool>) {
          if (!v.is_boolean()) fail(flag, where + " must be true or false");
          cfg.*member = v.get<bool>();
        } else if constexpr (std::is_same_v<T, double>) {
          if (!v.is_number()) fail(flag, where + " must be a number");
          cfg.*member = v.get<double>();
        } else {
          if (!v.is_number_integer()) fail(flag, where + " must be an integer");
          if constexpr (std::is_unsigned_v<T>) {
            if (v.is_number_unsigned()) {
              cfg.*member = static_cast<T>(v.get<std::uint64_t>());
            } else {
              fail(flag, where + " must be non-negative");
            }
          } else {
            const auto x = v.get<std::int64_t>();
            if (x < std::numeric_limits<T>::min() || x > std::numeric_limits<T>::max()) {
              fail(flag, where + " is out of range");
            }
            cfg.*member = static_cast<T>(x);
          }
        }
      },
      registry().at(flag).field);
}

bool is_builtin_kernel(const std::string& name) {
  return name == "one" || name == "linear" || name == "exp" || name == "texp";
}

bool reads(const CommandInfo& info, std::string_view flag) {
  return std::any_of(info.flags.begin(), info.flags.end(),
                     [&](const FlagInfo& f) { return f.name == flag; });
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void check(bool ok, const std::string& flag, const std::string& message) {
  if (!ok) fail(flag, message);
}

void validate(const CommandInfo& info, RunConfig& cfg) {
  const auto& f = info;
  if (reads(f, "kernel")) {
    if (cfg.kernel.empty()) {
      throw ConfigError("--kernel is required (one, linear, exp, texp, or a CSV path)");
    }
    check(is_builtin_kernel(cfg.kernel) || std::filesystem::is_regular_file(cfg.kernel), "kernel",
          "'" + cfg.kernel + "' is neither a builtin kernel nor an existing file");
  }
  if (reads(f, "d")) {
    const int hi = cfg.command == "uniqueness" ? 8 : 3;
    check(cfg.d >= 1 && cfg.d <= hi, "d", "must be in 1.." + std::to_string(hi) + ", got " +
                                             std::to_string(cfg.d));
  }
  if (reads(f, "spectrum")) {
    check(cfg.spectrum == "parametric" || cfg.spectrum == "white" ||
              std::filesystem::is_regular_file(cfg.spectrum),
          "spectrum", "'" + cfg.spectrum + "' is neither parametric, white, nor an existing file");
    if (cfg.spectrum == "parametric" || cfg.spectrum == "white") {
      check(cfg.c > 0.0, "c", "must be positive, got " + fmt(cfg.c));
    }
  }
  if (reads(f, "format")) {
    check(cfg.format == "json" || cfg.format == "csv", "format",
          "must be json or csv, got '" + cfg.format + "'");
  }
  check(!cfg.output.empty(), "output", "must not be empty");

  const auto& cmd = cfg.command;
  if (cmd == "resolvent") {
    check(cfg.mu <= 0.0, "mu", "must be <= 0, got " + fmt(cfg.mu));
    check(cfg.dt > 0.0, "dt", "must be positive, got " + fmt(cfg.dt));
    check(cfg.horizon > 0.0, "horizon", "must be positive, got " + fmt(cfg.horizon));
    check(cfg.scheme == "trapezoidal" || cfg.scheme == "richardson", "scheme",
          "must be trapezoidal or richardson, got '" + cfg.scheme + "'");
  } else if (cmd == "admissibility") {
    check(cfg.n_max >= 8, "n-max", "must be >= 8, got " + std::to_string(cfg.n_max));
    check(cfg.tol > 0.0, "tol", "must be positive, got " + fmt(cfg.tol));
    check(cfg.dt > 0.0, "dt", "must be positive, got " + fmt(cfg.dt));
  } else if (cmd == "hypothesis-h") {
    check(cfg.delta > 0.0 && cfg.delta < 1.0, "delta", "must lie in (0,1), got " + fmt(cfg.delta));
    check(cfg.n_max >= 1, "n-max", "must be >= 1, got " + std::to_string(cfg.n_max));
    check(cfg.lag_max_exp - cfg.lag_min_exp >= 2, "lag-max-exp",
          "lags must span at least three dyadic scales (lag-max-exp >= lag-min-exp + 2)");
    check(cfg.s0 >= 0.0, "s0", "must be >= 0, got " + fmt(cfg.s0));
    check(cfg.dt > 0.0, "dt", "must be positive, got " + fmt(cfg.dt));
  } else if (cmd == "regularity" || cmd == "pairing") {
    const int cap = cfg.d == 1 ? 20 : cfg.d == 2 ? 11 : 8;
    check(cfg.levels == 0 || (cfg.levels >= 2 && cfg.levels <= cap), "levels",
          "must be 0 or in 2.." + std::to_string(cap) + " for d=" + std::to_string(cfg.d));
    if (cmd == "pairing") {
      check(cfg.grid_factor >= 2, "grid-factor", "must be >= 2");
      check(cfg.lattice_cut >= 0, "lattice-cut", "must be >= 0");
      check(cfg.levels <= (cfg.d == 1 ? 14 : cfg.d == 2 ? 7 : 4), "levels",
            "too large for the pairing grid at d=" + std::to_string(cfg.d));
    }
  } else if (cmd == "sobolev") {
    check(!cfg.coefficients.empty(), "coefficients", "is required");
    check(std::filesystem::is_regular_file(cfg.coefficients), "coefficients",
          "file '" + cfg.coefficients + "' does not exist");
  } else if (cmd == "gd") {
    check(cfg.lattice_cut >= 0, "lattice-cut", "must be >= 0");
    check(cfg.spacing == "log" || cfg.spacing == "linear", "spacing", "must be log or linear");
    check(cfg.method == "quadrature" || cfg.method == "bessel", "method",
          "must be quadrature or bessel");
    check(cfg.points >= 1, "points", "must be >= 1");
    const bool zero_ok = cfg.d == 1 && cfg.spacing == "linear";
    check(zero_ok ? cfg.x_min >= 0.0 : cfg.x_min > 0.0, "x-min",
          zero_ok ? "must be >= 0" : "must be positive (G_d is singular at 0 for d >= 2)");
    check(cfg.x_max >= cfg.x_min && cfg.x_max <= M_PI, "x-max", "must lie in [x-min, pi]");
    check(cfg.points == 1 || cfg.x_max > cfg.x_min, "x-max", "must exceed x-min for a scan");
  } else if (cmd == "simulate" || cmd == "hoelder") {
    check(cfg.n_max >= (cmd == "hoelder" ? 1 : 0), "n-max", "must be >= 1");
    check(cfg.t0 >= 0.0, "t0", "must be >= 0");
    check(cfg.tail_mass > 0.0 && cfg.tail_mass < 1.0, "tail-mass", "must lie in (0,1)");
    check(cfg.n_paths >= 1, "n-paths", "must be >= 1");
    check(cfg.zero_mode == "stationary" || cfg.zero_mode == "brownian", "zero-mode",
          "must be stationary or brownian, got '" + cfg.zero_mode + "'");
    if (cmd == "simulate") {
      check(cfg.alpha > -1e300, "alpha", "must be finite");
      check(cfg.time_step > 0.0, "time-step", "must be positive");
      check(cfg.n_times >= 1, "n-times", "must be >= 1");
      check(cfg.conv_dt > 0.0, "conv-dt", "must be positive");
      check(cfg.memory_horizon >= 0.0, "memory-horizon", "must be >= 0");
      check(cfg.scheme == "convolution" || cfg.scheme == "exact", "scheme",
            "must be convolution or exact, got '" + cfg.scheme + "'");
      check(cfg.field_points >= 1, "field-points", "must be >= 1");
    } else {
      check(cfg.lag_max_exp - cfg.lag_min_exp >= 3, "lag-max-exp",
            "lags must span at least four dyadic scales (lag-max-exp >= lag-min-exp + 3)");
      check(cfg.n_times >= 0, "n-times", "must be >= 0");
      check(cfg.conv_dt >= 0.0, "conv-dt", "must be >= 0");
      check(cfg.batch >= 1, "batch", "must be >= 1");
    }
  } else if (cmd == "uniqueness") {
    check(cfg.k_max >= 0, "k-max", "must be >= 0");
    check(cfg.n_max >= 0, "n-max", "must be >= 0");
    check(cfg.tol > 0.0, "tol", "must be positive");
  } else if (cmd == "repro") {
    std::stringstream ss(cfg.only);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      const int id = parse_integer<int>("only", item);
      check(id >= 1 && id <= 10, "only", "criterion numbers are 1..10, got " + item);
    }
  }
}

}  // namespace

const std::vector<CommandInfo>& commands() {
  static const std::vector<CommandInfo> c = build_commands();
  return c;
}

const CommandInfo& command_info(std::string_view name) {
  for (const auto& c : commands()) {
    if (c.name == name) return c;
  }
  throw ConfigError("unknown subcommand '" + std::string(name) + "'");
}

RunConfig build_config(std::string_view command, const std::filesystem::path& config_file,
                       const std::vector<std::pair<std::string, std::string>>& flag_values) {
  const auto& info = command_info(command);
  RunConfig cfg;
  cfg.command = info.name;
  cfg.config_file = config_file;
  for (const auto& flag : info.flags) {
    if (!flag.default_value.empty()) assign_text(cfg, flag.name, flag.default_value);
  }

  if (!config_file.empty()) {
    if (!std::filesystem::is_regular_file(config_file)) {
      throw ConfigError("--config: file '" + config_file.string() + "' does not exist");
    }
    nlohmann::json j;
    try {
      std::ifstream is(config_file);
      j = nlohmann::json::parse(is);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("--config: " + config_file.string() + " is not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw ConfigError("--config: top level must be a JSON object");
    for (const auto& [key, value] : j.items()) {
      std::string flag = key;
      std::replace(flag.begin(), flag.end(), '_', '-');
      if (!reads(info, flag)) {
        throw ConfigError("--config: key '" + key + "' is not read by '" + info.name + "'");
      }
      assign_json(cfg, flag, key, value);
      cfg.provided.insert(flag);
    }
  }

  for (const auto& [flag, text] : flag_values) {
    if (!reads(info, flag)) fail(flag, "is not read by '" + info.name + "'");
    assign_text(cfg, flag, text);
    cfg.provided.insert(flag);
  }

  validate(info, cfg);
  return cfg;
}

ParseOutcome parse_config(const std::vector<std::string>& args, std::ostream& out,
                          std::ostream& err) {
  CLI::App app{"Stochastic Volterra equations with infinite delay on the torus", "vtorus"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "vtorus 0.1.0");

  struct Bound {
    CLI::App* sub = nullptr;
    std::string config;
    std::map<std::string, std::string> text;
    std::map<std::string, CLI::Option*> options;
  };
  std::vector<Bound> bound(commands().size());
  for (std::size_t i = 0; i < commands().size(); ++i) {
    const auto& info = commands()[i];
    auto& b = bound[i];
    b.sub = app.add_subcommand(info.name, info.description);
    b.sub->add_option("--config", b.config, "JSON file of flag values (keys like n_max)");
    for (const auto& flag : info.flags) {
      std::string help = flag.help;
      if (!flag.is_switch && !flag.default_value.empty()) help += " [" + flag.default_value + "]";
      if (flag.is_switch) {
        b.options[flag.name] = b.sub->add_flag("--" + flag.name)->description(help);
      } else {
        b.options[flag.name] = b.sub->add_option("--" + flag.name, b.text[flag.name], help);
      }
    }
  }

  ParseOutcome outcome;
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    outcome.exit_code = code == 0 ? 0 : 1;
    return outcome;
  }

  for (std::size_t i = 0; i < commands().size(); ++i) {
    auto& b = bound[i];
    if (!b.sub->parsed()) continue;
    std::vector<std::pair<std::string, std::string>> values;
    for (const auto& flag : commands()[i].flags) {
      auto* opt = b.options.at(flag.name);
      if (opt->count() == 0) continue;
      values.emplace_back(flag.name, flag.is_switch ? "true" : b.text[flag.name]);
    }
    try {
      outcome.config = build_config(commands()[i].name, b.config, values);
    } catch (const ConfigError& e) {
      err << "error: " << e.what() << '\n';
      outcome.exit_code = 1;
      return outcome;
    }
    outcome.run = true;
    return outcome;
  }
  err << "error: no subcommand given\n";
  outcome.exit_code = 1;
  return outcome;
}

}  // namespace vtorus::cli
