#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>

#include "acceptance.hpp"
#include "vtorus/admissibility.hpp"
#include "vtorus/ensemble_io.hpp"
#include "vtorus/green.hpp"
#include "vtorus/hoelder.hpp"
#include "vtorus/hypothesis_h.hpp"
#include "vtorus/io.hpp"
#include "vtorus/kernel.hpp"
#include "vtorus/resolvent.hpp"
#include "vtorus/serialize.hpp"
#include "vtorus/simulate.hpp"
#include "vtorus/spectrum.hpp"
#include "vtorus/stats.hpp"
#include "vtorus/uniqueness.hpp"

namespace vtorus::cli {
namespace {

using Rows = std::vector<std::vector<double>>;

std::string fmt(const char* f, auto... args) {
  const int n = std::snprintf(nullptr, 0, f, args...);
  std::string out(static_cast<std::size_t>(n) + 1, '\0');
  std::snprintf(out.data(), out.size(), f, args...);
  out.resize(static_cast<std::size_t>(n));
  return out;
}

Kernel load_kernel(const RunConfig& cfg) {
  if (cfg.kernel == "one" || cfg.kernel == "linear" || cfg.kernel == "exp" ||
      cfg.kernel == "texp") {
    return Kernel::builtin(cfg.kernel);
  }
  return load_kernel_csv(cfg.kernel, cfg.kernel_integrable);
}

CovarianceSpectrum load_spectrum(const RunConfig& cfg) {
  if (cfg.spectrum == "parametric") return CovarianceSpectrum::parametric(cfg.d, cfg.c, cfg.beta);
  if (cfg.spectrum == "white") return CovarianceSpectrum::white(cfg.d, cfg.c);
  auto spec = load_spectrum_csv(cfg.spectrum);
  if (cfg.provided.count("d") && spec.d() != cfg.d) {
    throw ConfigError("--d: " + std::to_string(cfg.d) + " does not match the spectrum file (d=" +
                      std::to_string(spec.d()) + ")");
  }
  return spec;
}

void emit(const RunConfig& cfg, const json& j, const std::vector<std::string>& header,
          const Rows& rows) {
  if (cfg.format == "csv") {
    write_csv(cfg.output, header, rows);
  } else {
    write_json(cfg.output, j);
  }
}

std::vector<int> dyadic_or_default(int levels, int d, int d1, int d2, int d3) {
  return dyadic_truncations(levels > 0 ? levels : d == 1 ? d1 : d == 2 ? d2 : d3);
}

std::string cmd_resolvent(const RunConfig& cfg) {
  const auto kernel = load_kernel(cfg);
  ResolventOptions opts;
  opts.scheme = cfg.scheme == "trapezoidal" ? ResolventScheme::Trapezoidal
                                            : ResolventScheme::RichardsonTrapezoidal;
  const auto grid = solve_resolvent(kernel, cfg.mu, cfg.dt, cfg.horizon, opts);
  const double residual = resolvent_residual(kernel, grid);
  const bool exact = kernel.is_builtin();
  double max_err = 0.0;
  Rows rows;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    std::vector<double> row{grid.time(j), grid.values[j]};
    if (exact) {
      const double c = resolvent_closed_form(kernel, cfg.mu, grid.time(j));
      max_err = std::max(max_err, std::abs(grid.values[j] - c));
      row.push_back(c);
    }
    rows.push_back(std::move(row));
  }
  json j = to_json(grid);
  j["kernel"] = kernel.id();
  j["nodes"] = grid.size();
  j["residual"] = residual;
  j["max_abs_error_vs_closed_form"] = exact ? json(max_err) : json(nullptr);
  std::vector<std::string> header{"t", "r"};
  if (exact) header.push_back("closed_form");
  emit(cfg, j, header, rows);
  std::string s = fmt("resolvent %s mu=%g dt=%g: %zu nodes, residual %.3e", kernel.id().c_str(),
                      cfg.mu, cfg.dt, grid.size(), residual);
  if (exact) s += fmt(", max |r - closed form| %.3e", max_err);
  return s;
}

std::string cmd_admissibility(const RunConfig& cfg) {
  const auto kernel = load_kernel(cfg);
  AdmissibilityOptions opts;
  opts.dt = cfg.dt;
  opts.force_grid = cfg.force_grid;
  opts.threads = cfg.threads;
  const auto rep = estimate_Cb(kernel, cfg.n_max, cfg.tol, opts);
  Rows rows;
  for (const auto& p : rep.curve) rows.push_back({p.n, p.value, p.integral, p.error, p.horizon});
  emit(cfg, to_json(rep), {"n", "I", "integral_r2", "error", "tail_horizon"}, rows);
  std::string s = fmt("C_b ≈ %.4f (%s)", rep.Cb, rep.converged ? "converged" : "not converged");
  if (rep.published_value && std::abs(*rep.published_value - rep.Cb) > 1e-3) {
    s += fmt("; published value %g differs: %s", *rep.published_value, rep.note.c_str());
  }
  return s;
}

std::string cmd_hypothesis_h(const RunConfig& cfg) {
  const auto kernel = load_kernel(cfg);
  std::vector<int> ns(static_cast<std::size_t>(cfg.n_max));
  for (int i = 0; i < cfg.n_max; ++i) ns[static_cast<std::size_t>(i)] = i + 1;
  const auto pairs = dyadic_time_pairs(std::ldexp(1.0, cfg.lag_min_exp),
                                       std::ldexp(1.0, cfg.lag_max_exp), cfg.s0);
  HypothesisHOptions opts;
  opts.dt = cfg.dt;
  opts.threads = cfg.threads;
  const auto rep = check_hypothesis_H(kernel, cfg.delta, ns, pairs, opts);
  Rows rows;
  for (const auto& e : rep.entries) {
    rows.push_back({static_cast<double>(e.n), e.s, e.t, e.ratio_i, e.ratio_ii});
  }
  emit(cfg, to_json(rep), {"n", "s", "t", "ratio_i", "ratio_ii"}, rows);
  return fmt("Hypothesis (H) %s delta=%g over %zu n x %zu lags: %s, C_delta = %.6g",
             kernel.id().c_str(), cfg.delta, ns.size(), pairs.size(),
             rep.satisfied ? "satisfied on the scanned set" : "not satisfied", rep.C_delta);
}

std::string cmd_regularity(const RunConfig& cfg) {
  const auto spec = load_spectrum(cfg);
  const auto truncations = dyadic_or_default(cfg.levels, spec.d(), 12, 8, 6);
  const auto sums = regularity_partial_sums(spec, cfg.alpha, truncations);
  json j = to_json(sums);
  j["d"] = spec.d();
  j["spectrum"] = spec.describe();
  j["validation"] = to_json(validate_spectrum(spec));
  if (spec.form() == SpectrumForm::Parametric || spec.form() == SpectrumForm::White) {
    const double beta = spec.form() == SpectrumForm::White ? 0.0 : spec.beta();
    j["parametric_decision"] = parametric_regularity_decision(spec.d(), cfg.alpha, beta);
    j["boundary_case"] = 2.0 * (beta - cfg.alpha) == spec.d();
  }
  Rows rows;
  for (std::size_t i = 0; i < sums.truncations.size(); ++i) {
    rows.push_back({static_cast<double>(sums.truncations[i]), sums.partial_sums[i]});
  }
  emit(cfg, j, {"N", "S_N"}, rows);
  return fmt("regularity d=%d alpha=%g %s: %s (S_%d = %.10g, last ratio %.4f)", spec.d(),
             cfg.alpha, spec.describe().c_str(), std::string(to_string(sums.trend.verdict)).c_str(),
             sums.truncations.back(), sums.partial_sums.back(), sums.trend.last_ratio);
}

std::string cmd_sobolev(const RunConfig& cfg) {
  const auto table = read_csv(cfg.coefficients);
  if (table.header.size() < 3) {
    throw ConfigError("--coefficients: expected columns n_1..n_d, xi1, xi2");
  }
  const int d = static_cast<int>(table.header.size()) - 2;
  int n_max = 0;
  std::vector<std::vector<int>> idx;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    std::vector<int> n(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
      const double v = table.rows[r][static_cast<std::size_t>(k)];
      if (v != std::round(v) || std::abs(v) > 1e6) {
        throw ConfigError(fmt("--coefficients: row %zu has a non-integer index", r + 2));
      }
      n[static_cast<std::size_t>(k)] = static_cast<int>(v);
      n_max = std::max(n_max, std::abs(n[static_cast<std::size_t>(k)]));
    }
    idx.push_back(std::move(n));
  }
  const auto set = build_index_set(d, n_max);
  std::map<std::vector<int>, std::size_t> member;
  for (std::size_t m = 0; m < set.size(); ++m) {
    auto v = set[m];
    member[std::vector<int>(v.begin(), v.end())] = m;
  }
  std::vector<double> xi1(set.size(), 0.0), xi2(set.size(), 0.0);
  std::vector<bool> seen(set.size() + 1, false);
  double xi0 = 0.0;
  for (std::size_t r = 0; r < idx.size(); ++r) {
    const auto& row = table.rows[r];
    const double a = row[static_cast<std::size_t>(d)];
    const double b = row[static_cast<std::size_t>(d) + 1];
    const bool zero = std::all_of(idx[r].begin(), idx[r].end(), [](int v) { return v == 0; });
    std::size_t slot;
    if (zero) {
      if (b != 0.0) throw ConfigError(fmt("--coefficients: row %zu: xi2 of n=0 must be 0", r + 2));
      slot = set.size();
      xi0 = a;
    } else {
      const auto it = member.find(idx[r]);
      if (it == member.end()) {
        throw ConfigError(fmt("--coefficients: row %zu: index is not in the half-lattice Z_s^%d "
                              "(list its negative instead)",
                              r + 2, d));
      }
      slot = it->second;
      xi1[slot] = a;
      xi2[slot] = b;
    }
    if (seen[slot]) throw ConfigError(fmt("--coefficients: row %zu repeats an index", r + 2));
    seen[slot] = true;
  }
  const double norm = sobolev_norm(set, xi0, xi1, xi2, cfg.alpha);
  write_json(cfg.output, json{{"d", d},
                              {"alpha", cfg.alpha},
                              {"n_max", n_max},
                              {"rows", idx.size()},
                              {"norm", norm},
                              {"norm_squared", norm * norm}});
  return fmt("||xi||_{H^%g} = %.17g (d=%d, %zu coefficients)", cfg.alpha, norm, d, idx.size());
}

std::string cmd_gd(const RunConfig& cfg) {
  GdOptions opts;
  opts.lattice_cut = cfg.lattice_cut;
  opts.normalization = parse_normalization(cfg.normalization);
  opts.method = cfg.method == "bessel" ? GdMethod::Bessel : GdMethod::Quadrature;
  std::vector<std::string> header;
  for (int k = 1; k <= cfg.d; ++k) header.push_back("x_" + std::to_string(k));
  header.push_back("value");
  header.push_back("error_estimate");
  Rows rows;
  json pts = json::array();
  std::vector<double> lx, lg;
  for (int i = 0; i < cfg.points; ++i) {
    const double frac = cfg.points == 1 ? 0.0 : static_cast<double>(i) / (cfg.points - 1);
    const double x = cfg.spacing == "log"
                         ? cfg.x_min * std::pow(cfg.x_max / cfg.x_min, frac)
                         : cfg.x_min + (cfg.x_max - cfg.x_min) * frac;
    std::vector<double> xs(static_cast<std::size_t>(cfg.d), 0.0);
    xs[0] = x;
    const auto v = eval_Gd(cfg.d, xs, opts);
    auto row = xs;
    row.push_back(v.value);
    row.push_back(v.error);
    rows.push_back(row);
    json e = to_json(v);
    e["x"] = xs;
    pts.push_back(e);
    if (x > 0.0 && v.value > 0.0) {
      lx.push_back(std::log(x));
      lg.push_back(std::log(v.value));
    }
  }
  json j = {{"d", cfg.d},
            {"normalization", std::string(to_string(opts.normalization))},
            {"method", cfg.method},
            {"lattice_cut", cfg.lattice_cut},
            {"points", pts}};
  std::string s = fmt("G_%d (%s, %s) at %d points in [%g, %g]", cfg.d,
                      std::string(to_string(opts.normalization)).c_str(), cfg.method.c_str(),
                      cfg.points, cfg.x_min, cfg.x_max);
  if (lx.size() >= 3) {
    const auto fit = linear_fit(lx, lg);
    j["loglog_fit"] = to_json(fit);
    s += fmt(": log-log slope %.4f", fit.slope);
  } else {
    j["loglog_fit"] = nullptr;
  }
  emit(cfg, j, header, rows);
  return s;
}

std::string cmd_pairing(const RunConfig& cfg) {
  const auto spec = load_spectrum(cfg);
  PairingOptions opts;
  if (cfg.levels > 0) opts.truncations = dyadic_truncations(cfg.levels);
  opts.grid_factor = cfg.grid_factor;
  opts.lattice_cut = cfg.lattice_cut;
  opts.normalization = parse_normalization(cfg.normalization);
  opts.threads = cfg.threads;
  const auto res = pairing_gamma_Gd(spec, opts);
  json j = to_json(res);
  j["d"] = spec.d();
  j["spectrum"] = spec.describe();
  j["normalization"] = std::string(to_string(opts.normalization));
  Rows rows;
  for (std::size_t i = 0; i < res.truncations.size(); ++i) {
    rows.push_back({static_cast<double>(res.truncations[i]), res.values[i], res.min_partial[i]});
  }
  emit(cfg, j, {"N", "pairing", "min_gamma_N"}, rows);
  return fmt("pairing d=%d %s: %s (value %.10g at N=%d, trend %s, last ratio %.4f)", spec.d(),
             spec.describe().c_str(), res.divergent ? "divergent" : "no divergence detected",
             res.values.back(), res.truncations.back(),
             std::string(to_string(res.trend.verdict)).c_str(), res.trend.last_ratio);
}

SimulationConfig simulation_config(const RunConfig& cfg) {
  SimulationConfig c;
  c.d = cfg.d;
  c.alpha = cfg.alpha;
  c.n_max = cfg.n_max;
  c.time_grid = {cfg.t0, cfg.time_step, static_cast<std::size_t>(cfg.n_times)};
  c.conv_dt = cfg.conv_dt;
  c.memory_horizon = cfg.memory_horizon;
  c.tail_mass = cfg.tail_mass;
  c.n_paths = static_cast<std::size_t>(cfg.n_paths);
  c.seed = cfg.seed;
  c.zero_mode = parse_zero_mode_policy(cfg.zero_mode);
  c.threads = cfg.threads;
  return c;
}

std::string cmd_simulate(const RunConfig& cfg) {
  const auto kernel = load_kernel(cfg);
  const auto spec = load_spectrum(cfg);
  auto sc = simulation_config(cfg);
  sc.d = spec.d();
  const auto ens = cfg.scheme == "exact" ? simulate_exact_gaussian(kernel, spec, sc)
                                         : simulate_convolution(kernel, spec, sc);
  write_ensemble(cfg.output, ens);

  const auto moments = estimate_moment(ens, cfg.alpha);
  Rows rows;
  for (std::size_t k = 0; k < moments.size(); ++k) {
    const double t = sc.time_grid.at(k);
    const auto a = analytic_second_moment(kernel, spec, cfg.alpha, sc.n_max, sc.zero_mode, t);
    rows.push_back({t, moments[k].mean, moments[k].se, a.value});
  }
  const std::string moments_path = cfg.moments.empty() ? cfg.output + ".moments.csv" : cfg.moments;
  write_csv(moments_path, {"t", "mean_norm2", "se", "analytic"}, rows);

  if (!cfg.field.empty()) {
    const auto thetas = theta_grid(sc.d, static_cast<std::size_t>(cfg.field_points));
    write_field_csv(cfg.field, sc.d, thetas, evaluate_field(ens, thetas, 0, 0));
  }
  return fmt("simulate %s: %zu paths x %zu times x %zu slots -> %s; "
             "E||X(t0)||^2_{H^%g} = %.6g +- %.2g (analytic %.6g)",
             std::string(scheme_name(ens.scheme_id)).c_str(), ens.n_paths, ens.n_times,
             ens.n_slots, cfg.output.c_str(), cfg.alpha + 1.0, rows[0][1], rows[0][2], rows[0][3]);
}

std::string cmd_hoelder(const RunConfig& cfg) {
  const auto kernel = load_kernel(cfg);
  const auto spec = load_spectrum(cfg);
  SimulationConfig sc;
  sc.d = spec.d();
  sc.n_max = cfg.n_max;
  const double step = std::ldexp(1.0, cfg.lag_min_exp);
  const int span = 1 << (cfg.lag_max_exp - cfg.lag_min_exp);
  const int n_times = cfg.n_times > 0 ? cfg.n_times : 2 * span + 1;
  if (n_times <= span) {
    throw ConfigError("--n-times: needs more than " + std::to_string(span) +
                      " points to reach the largest lag");
  }
  sc.time_grid = {cfg.t0, step, static_cast<std::size_t>(n_times)};
  sc.conv_dt = cfg.conv_dt > 0.0 ? cfg.conv_dt : step / 4.0;
  sc.tail_mass = cfg.tail_mass;
  sc.n_paths = static_cast<std::size_t>(cfg.n_paths);
  sc.seed = cfg.seed;
  sc.zero_mode = parse_zero_mode_policy(cfg.zero_mode);
  sc.threads = cfg.threads;
  HoelderOptions opts;
  opts.lags = dyadic_lags(cfg.lag_min_exp, cfg.lag_max_exp);
  opts.monte_carlo = !cfg.no_mc;
  opts.batch = static_cast<std::size_t>(cfg.batch);
  const auto res = estimate_hoelder(kernel, spec, sc, opts);
  json j = to_json(res);
  j["kernel"] = kernel.id();
  j["spectrum"] = spec.describe();
  j["config"] = to_json(sc);
  Rows rows;
  for (const auto& p : res.points) rows.push_back({p.h, p.analytic, p.mc_mean, p.mc_se});
  emit(cfg, j, {"h", "analytic", "mc_mean", "mc_se"}, rows);
  std::string s = fmt("hoelder %s %s: analytic slope %.4f (eta %.4f)", kernel.id().c_str(),
                      spec.describe().c_str(), res.delta_analytic, res.eta_analytic);
  if (res.has_mc) {
    s += fmt(", MC slope %.4f +- %.4f %s band [%.4f, %.4f]", res.delta_mc, res.delta_mc_se,
             res.mc_within_band ? "within" : "outside", res.band_lo, res.band_hi);
  }
  return s;
}

std::string cmd_uniqueness(const RunConfig& cfg) {
  const auto kernel = load_kernel(cfg);
  UniquenessOptions opts;
  opts.d = cfg.d;
  opts.closed_form = !cfg.numeric;
  opts.threads = cfg.threads;
  const auto rep = check_uniqueness_condition(kernel, cfg.k_max, cfg.n_max, cfg.tol, opts);
  write_json(cfg.output, to_json(rep));
  std::string s = fmt("uniqueness %s d=%d |k|<=%d n_max=%d: %s over the window (min distance "
                      "%.12g at k=%d, |n|^2=%ld; %zu violations)",
                      kernel.id().c_str(), cfg.d, cfg.k_max, cfg.n_max,
                      rep.holds ? "holds" : "fails", rep.min_distance, rep.argmin_k,
                      rep.argmin_n_abs2, rep.violations.size());
  if (!rep.unresolved_k.empty()) s += fmt(", %zu k unresolved", rep.unresolved_k.size());
  return s;
}

int cmd_repro(const RunConfig& cfg, std::ostream& out) {
  repro::ReproOptions opts;
  opts.threads = cfg.threads;
  std::stringstream ss(cfg.only);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) opts.only.push_back(std::stoi(item));
  }
  const auto results = repro::run_acceptance(
      opts, [&](const repro::CriterionResult& r) { out << repro::format_line(r) << std::endl; });
  write_json(cfg.output, repro::to_json(results));
  const auto passed = std::count_if(results.begin(), results.end(),
                                    [](const repro::CriterionResult& r) { return r.pass; });
  out << fmt("repro: %td/%zu criteria pass -> %s", passed, results.size(), cfg.output.c_str())
      << '\n';
  return passed == static_cast<std::ptrdiff_t>(results.size()) ? 0 : 2;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const auto& c = cfg.command;
    if (c == "repro") return cmd_repro(cfg, out);
    std::string line;
    if (c == "resolvent") line = cmd_resolvent(cfg);
    else if (c == "admissibility") line = cmd_admissibility(cfg);
    else if (c == "hypothesis-h") line = cmd_hypothesis_h(cfg);
    else if (c == "regularity") line = cmd_regularity(cfg);
    else if (c == "sobolev") line = cmd_sobolev(cfg);
    else if (c == "gd") line = cmd_gd(cfg);
    else if (c == "pairing") line = cmd_pairing(cfg);
    else if (c == "simulate") line = cmd_simulate(cfg);
    else if (c == "hoelder") line = cmd_hoelder(cfg);
    else if (c == "uniqueness") line = cmd_uniqueness(cfg);
    else throw ConfigError("unknown subcommand '" + c + "'");
    out << line << '\n';
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ErrorKind::NumericalFailure);
  }
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto parsed = parse_config(args, out, err);
  if (!parsed.run) return parsed.exit_code;
  return run(parsed.config, out, err);
}

}  // namespace vtorus::cli
