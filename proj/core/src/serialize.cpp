#include "vtorus/serialize.hpp"

#include "vtorus/error.hpp"

namespace vtorus {

namespace {

std::string scheme_string(ResolventScheme s) {
  return s == ResolventScheme::Trapezoidal ? "trapezoidal" : "richardson-trapezoidal";
}

}  // namespace

json to_json(const ResolventGrid& g) {
  return {{"mu", g.mu},
          {"dt", g.dt},
          {"horizon", g.horizon},
          {"scheme", scheme_string(g.scheme)},
          {"values", g.values}};
}

json to_json(const AdmissibilityPoint& p) {
  return {{"n", p.n},
          {"I", p.value},
          {"integral_r2", p.integral},
          {"error", p.error},
          {"tail_horizon", p.horizon}};
}

json to_json(const AdmissibilityReport& r) {
  json curve = json::array();
  for (const auto& p : r.curve) curve.push_back(to_json(p));
  json j = {{"kernel", r.kernel_id},  {"curve", curve}, {"extrapolated", r.extrapolated},
            {"C_b", r.Cb},            {"tol", r.tol},   {"converged", r.converged},
            {"note", r.note}};
  j["published_value"] = r.published_value ? json(*r.published_value) : json(nullptr);
  return j;
}

json to_json(const HypothesisHReport& r) {
  auto witness = [](const HypothesisHWitness& w) {
    return json{{"n", w.n}, {"s", w.s}, {"t", w.t}, {"ratio", w.ratio}};
  };
  json pairs = json::array();
  for (const auto& p : r.time_pairs) pairs.push_back({p.s, p.t});
  json entries = json::array();
  for (const auto& e : r.entries) {
    entries.push_back(
        {{"n", e.n}, {"s", e.s}, {"t", e.t}, {"ratio_i", e.ratio_i}, {"ratio_ii", e.ratio_ii}});
  }
  return {{"kernel", r.kernel_id},
          {"delta", r.delta},
          {"C_delta", r.C_delta},
          {"witness_i", witness(r.witness_i)},
          {"witness_ii", witness(r.witness_ii)},
          {"finite", r.finite},
          {"growth_in_n", r.growth_in_n},
          {"growth_in_scale", r.growth_in_scale},
          {"satisfied", r.satisfied},
          {"n_set", r.n_set},
          {"time_pairs", pairs},
          {"entries", entries},
          {"note", r.note}};
}

json to_json(const SpectrumValidation& v) {
  json viol = json::array();
  for (const auto& x : v.violations) {
    viol.push_back({{"kind", x.kind}, {"n", x.n}, {"value", x.value}, {"message", x.message}});
  }
  json j = {{"valid", v.valid}, {"violations", viol}, {"witness_method", v.witness_method}};
  j["witness_r"] = v.witness_r ? json(*v.witness_r) : json(nullptr);
  return j;
}

json to_json(const IncrementTrend& t) {
  return {{"verdict", std::string(to_string(t.verdict))},
          {"last_ratio", t.last_ratio},
          {"last_increment", t.last_increment}};
}

json to_json(const RegularitySums& r) {
  return {{"alpha", r.alpha},
          {"truncations", r.truncations},
          {"partial_sums", r.partial_sums},
          {"trend", to_json(r.trend)},
          {"verdict", std::string(to_string(r.trend.verdict))}};
}

json to_json(const GdValue& v) {
  return {{"value", v.value},
          {"error", v.error},
          {"lattice_error", v.lattice_error},
          {"quad_error", v.quad_error}};
}

json to_json(const PairingResult& r) {
  return {{"truncations", r.truncations}, {"values", r.values},
          {"min_partial", r.min_partial}, {"trend", to_json(r.trend)},
          {"divergent", r.divergent}};
}

json to_json(const SimulationConfig& c) {
  return {{"d", c.d},
          {"alpha", c.alpha},
          {"n_max", c.n_max},
          {"t0", c.time_grid.t0},
          {"time_step", c.time_grid.dt},
          {"n_times", c.time_grid.count},
          {"conv_dt", c.conv_dt},
          {"memory_horizon", c.memory_horizon},
          {"tail_mass", c.tail_mass},
          {"n_paths", c.n_paths},
          {"seed", c.seed},
          {"zero_mode", std::string(to_string(c.zero_mode))}};
}

SimulationConfig simulation_config_from_json(const json& j) {
  try {
    SimulationConfig c;
    c.d = j.at("d").get<int>();
    c.alpha = j.at("alpha").get<double>();
    c.n_max = j.at("n_max").get<int>();
    c.time_grid.t0 = j.at("t0").get<double>();
    c.time_grid.dt = j.at("time_step").get<double>();
    c.time_grid.count = j.at("n_times").get<std::size_t>();
    c.conv_dt = j.at("conv_dt").get<double>();
    c.memory_horizon = j.at("memory_horizon").get<double>();
    c.tail_mass = j.at("tail_mass").get<double>();
    c.n_paths = j.at("n_paths").get<std::size_t>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.zero_mode = parse_zero_mode_policy(j.at("zero_mode").get<std::string>());
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("simulation config: ") + e.what());
  }
}

json to_json(const LinearFit& f) {
  return {{"slope", f.slope},   {"intercept", f.intercept}, {"slope_se", f.slope_se},
          {"r2", f.r2},         {"n", f.n},                 {"band_lo", f.band_lo},
          {"band_hi", f.band_hi}};
}

json to_json(const HoelderResult& r) {
  json pts = json::array();
  for (const auto& p : r.points) {
    pts.push_back({{"h", p.h},
                   {"analytic", p.analytic},
                   {"mc_mean", p.mc_mean},
                   {"mc_se", p.mc_se},
                   {"pairs", p.pairs}});
  }
  return {{"points", pts},
          {"analytic_fit", to_json(r.analytic_fit)},
          {"delta_analytic", r.delta_analytic},
          {"eta_analytic", r.eta_analytic},
          {"has_mc", r.has_mc},
          {"delta_mc", r.delta_mc},
          {"delta_mc_se", r.delta_mc_se},
          {"eta_mc", r.eta_mc},
          {"band_lo", r.band_lo},
          {"band_hi", r.band_hi},
          {"mc_within_band", r.mc_within_band}};
}

json to_json(const UniquenessReport& r) {
  json viol = json::array();
  for (const auto& v : r.violations) {
    viol.push_back({{"k", v.k}, {"n_abs2", v.n_abs2}, {"distance", v.distance}});
  }
  json unresolved = json::array();
  for (std::size_t i = 0; i < r.unresolved_k.size(); ++i) {
    unresolved.push_back({{"k", r.unresolved_k[i]}, {"reason", r.unresolved_reason[i]}});
  }
  return {{"kernel", r.kernel_id},
          {"d", r.d},
          {"k_range", {-r.k_max, r.k_max}},
          {"n_max", r.n_max},
          {"n_abs2_range", {r.n_abs2_values.empty() ? 0 : r.n_abs2_values.front(),
                            r.n_abs2_values.empty() ? 0 : r.n_abs2_values.back()}},
          {"tol", r.tol},
          {"min_distance", r.min_distance},
          {"argmin", {{"k", r.argmin_k}, {"n_abs2", r.argmin_n_abs2}}},
          {"violations", viol},
          {"holds", r.holds},
          {"verdict_scope", "finite window"},
          {"closed_form", r.closed_form},
          {"asymptotically_clear", r.asymptotically_clear},
          {"asymptotic_note", r.asymptotic_note},
          {"unresolved", unresolved}};
}

json to_json(const IndexSet& s) {
  json members = json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto m = s[i];
    members.push_back(std::vector<int>(m.begin(), m.end()));
  }
  return {{"d", s.d}, {"n_max", s.n_max}, {"members", members}};
}

}  // namespace vtorus
