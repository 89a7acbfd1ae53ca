#include "irsdoa/config_io.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <fmt/format.h>

#include "irsdoa/errors.hpp"

namespace irsdoa {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed, const char* what) {
  if (!j.is_object()) throw ConfigError(fmt::format("{}: expected an object", what));
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) throw ConfigError(fmt::format("{}: unknown field '{}'", what, key));
  }
}

template <typename T>
T get(const json& j, const char* key, const char* what) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(fmt::format("{}: field '{}': {}", what, key, e.what()));
  }
}

template <typename T>
void maybe(const json& j, const char* key, T& out, const char* what) {
  if (j.contains(key)) out = get<T>(j, key, what);
}

int get_count(const json& j, const char* key, int fallback, const char* what) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(fmt::format("{}: '{}' must be an integer", what, key));
  return v.get<int>();
}

MeasurementKind parse_kind(const std::string& s) {
  if (s == "dft") return MeasurementKind::Dft;
  if (s == "random_phase") return MeasurementKind::RandomPhase;
  throw ConfigError(fmt::format("measurement kind '{}' is not 'dft' or 'random_phase'", s));
}

SweepAxis parse_axis(const std::string& s) {
  if (s == "tx_power_dbm") return SweepAxis::TxPowerDbm;
  if (s == "n_targets") return SweepAxis::NTargets;
  if (s == "n_ses_tradeoff") return SweepAxis::NSesTradeoff;
  if (s == "n_slots") return SweepAxis::NSlots;
  throw ConfigError(fmt::format("unknown sweep axis '{}'", s));
}

Estimator parse_estimator(const std::string& s) {
  if (s == "anm" || s == "ANM") return Estimator::Anm;
  if (s == "music" || s == "MUSIC") return Estimator::Music;
  throw ConfigError(fmt::format("unknown estimator '{}'", s));
}

AnmConfig parse_anm(const json& j) {
  constexpr const char* what = "anm";
  reject_unknown(j, {"beta", "rho", "admm_penalty", "tolerance", "max_iters", "grid_step_deg", "refine"},
                 what);
  AnmConfig cfg;
  maybe(j, "beta", cfg.beta, what);
  maybe(j, "rho", cfg.rho, what);
  maybe(j, "admm_penalty", cfg.admm_penalty, what);
  maybe(j, "tolerance", cfg.tolerance, what);
  cfg.max_iters = get_count(j, "max_iters", cfg.max_iters, what);
  if (j.contains("grid_step_deg")) cfg.grid_step = deg_to_rad(get<double>(j, "grid_step_deg", what));
  maybe(j, "refine", cfg.refine, what);
  cfg.resolved(1).validate();
  if (cfg.beta < 0.0) throw ConfigError("anm: beta must be positive (or 0 for the default)");
  return cfg;
}

MusicConfig parse_music(const json& j) {
  constexpr const char* what = "music";
  reject_unknown(j, {"grid_step_deg", "refine"}, what);
  MusicConfig cfg;
  if (j.contains("grid_step_deg")) cfg.grid_step = deg_to_rad(get<double>(j, "grid_step_deg", what));
  maybe(j, "refine", cfg.refine, what);
  cfg.validate();
  return cfg;
}

bool is_whole(double x) { return std::floor(x) == x; }

}  // namespace

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open '{}'", path.string()));
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("'{}' is not valid JSON: {}", path.string(), e.what()));
  }
}

SceneFile parse_scene(const json& j) {
  constexpr const char* what = "scene";
  reject_unknown(j,
                 {"n_bs_antennas", "n_res", "n_ses", "n_slots", "carrier_freq_ghz", "tx_power_dbm",
                  "noise_power_dbm", "bs_irs_distance_m", "bs_departure_angle_deg",
                  "irs_arrival_angle_deg", "targets", "measurement"},
                 what);
  SceneFile out;
  SceneConfig& s = out.scene;
  s = SceneConfig::desk_defaults();
  s.n_bs_antennas = get_count(j, "n_bs_antennas", s.n_bs_antennas, what);
  s.n_res = get_count(j, "n_res", s.n_res, what);
  s.n_ses = get_count(j, "n_ses", s.n_ses, what);
  s.n_slots = get_count(j, "n_slots", s.n_slots, what);
  if (j.contains("carrier_freq_ghz")) s.carrier_freq = get<double>(j, "carrier_freq_ghz", what) * 1e9;
  if (j.contains("tx_power_dbm")) s.tx_power = dbm_to_watts(get<double>(j, "tx_power_dbm", what));
  if (j.contains("noise_power_dbm")) s.noise_power = dbm_to_watts(get<double>(j, "noise_power_dbm", what));
  maybe(j, "bs_irs_distance_m", s.bs_irs_distance, what);
  if (j.contains("bs_departure_angle_deg")) {
    s.bs_departure_angle = deg_to_rad(get<double>(j, "bs_departure_angle_deg", what));
    s.irs_arrival_angle = s.bs_departure_angle;
  }
  if (j.contains("irs_arrival_angle_deg")) {
    s.irs_arrival_angle = deg_to_rad(get<double>(j, "irs_arrival_angle_deg", what));
  }
  if (j.contains("targets")) {
    const json& list = j.at("targets");
    if (!list.is_array()) throw ConfigError("scene: 'targets' must be a list");
    s.targets.clear();
    for (const json& t : list) {
      reject_unknown(t, {"angle_deg", "distance_m", "rcs_dbsm"}, "target");
      Target target;
      target.angle = deg_to_rad(get<double>(t, "angle_deg", "target"));
      maybe(t, "distance_m", target.distance, "target");
      target.rcs = dbsm_to_m2(t.contains("rcs_dbsm") ? get<double>(t, "rcs_dbsm", "target") : 10.0);
      s.targets.push_back(target);
    }
  }
  if (j.contains("measurement")) {
    const json& m = j.at("measurement");
    reject_unknown(m, {"kind", "seed"}, "measurement");
    if (m.contains("kind")) out.measurement.kind = parse_kind(get<std::string>(m, "kind", "measurement"));
    maybe(m, "seed", out.measurement.seed, "measurement");
  }
  s.validate();
  return out;
}

SceneFile load_scene(const std::filesystem::path& path) { return parse_scene(read_json_file(path)); }

json scene_to_json(const SceneFile& file) {
  const SceneConfig& s = file.scene;
  json targets = json::array();
  for (const Target& t : s.targets) {
    targets.push_back({{"angle_deg", rad_to_deg(t.angle)},
                       {"distance_m", t.distance},
                       {"rcs_dbsm", m2_to_dbsm(t.rcs)}});
  }
  return {{"n_bs_antennas", s.n_bs_antennas},
          {"n_res", s.n_res},
          {"n_ses", s.n_ses},
          {"n_slots", s.n_slots},
          {"carrier_freq_ghz", s.carrier_freq / 1e9},
          {"tx_power_dbm", watts_to_dbm(s.tx_power)},
          {"noise_power_dbm", watts_to_dbm(s.noise_power)},
          {"bs_irs_distance_m", s.bs_irs_distance},
          {"bs_departure_angle_deg", rad_to_deg(s.bs_departure_angle)},
          {"irs_arrival_angle_deg", rad_to_deg(s.irs_arrival_angle)},
          {"targets", targets},
          {"measurement",
           {{"kind", std::string(to_string(file.measurement.kind))}, {"seed", file.measurement.seed}}}};
}

SweepSpec parse_sweep(const json& j) {
  constexpr const char* what = "sweep";
  reject_unknown(j,
                 {"axis", "points", "trials", "master_seed", "estimators", "base_scene", "anm",
                  "music", "element_budget", "noiseless"},
                 what);
  SweepSpec spec;
  spec.axis = parse_axis(get<std::string>(j, "axis", what));
  spec.points = get<std::vector<double>>(j, "points", what);
  if (j.contains("trials")) {
    const int trials = get_count(j, "trials", 0, what);
    if (trials < 1) throw ConfigError("sweep: trials must be >= 1");
    spec.trials = static_cast<std::size_t>(trials);
  }
  maybe(j, "master_seed", spec.master_seed, what);
  if (j.contains("estimators")) {
    spec.estimators.clear();
    for (const auto& name : get<std::vector<std::string>>(j, "estimators", what)) {
      spec.estimators.push_back(parse_estimator(name));
    }
  }
  if (j.contains("base_scene")) {
    const SceneFile base = parse_scene(j.at("base_scene"));
    spec.base_scene = base.scene;
    spec.measurement = base.measurement;
  }
  if (j.contains("anm")) spec.anm = parse_anm(j.at("anm"));
  if (j.contains("music")) spec.music = parse_music(j.at("music"));
  if (j.contains("element_budget")) spec.element_budget = get_count(j, "element_budget", 0, what);
  maybe(j, "noiseless", spec.noiseless, what);
  spec.validate();
  return spec;
}

SweepSpec load_sweep(const std::filesystem::path& path) { return parse_sweep(read_json_file(path)); }

void SweepSpec::validate() const {
  if (points.empty()) throw ConfigError("sweep: 'points' must not be empty");
  if (trials < 1) throw ConfigError("sweep: trials must be >= 1");
  if (estimators.empty()) throw ConfigError("sweep: at least one estimator is required");
  base_scene.validate();
  for (double p : points) {
    switch (axis) {
      case SweepAxis::TxPowerDbm:
        if (!std::isfinite(p)) throw ConfigError("sweep: transmit power must be finite");
        break;
      case SweepAxis::NTargets:
        if (!is_whole(p) || p < 1 || p > std::size(kTargetAngleOrderDeg)) {
          throw ConfigError(fmt::format("sweep: n_targets point {} outside 1..{}", p,
                                        std::size(kTargetAngleOrderDeg)));
        }
        break;
      case SweepAxis::NSesTradeoff:
        if (!element_budget) throw ConfigError("sweep: n_ses_tradeoff needs element_budget");
        if (!is_whole(p) || p < 1 || p >= *element_budget) {
          throw ConfigError(fmt::format("sweep: M = {} must be an integer in [1, {})", p, *element_budget));
        }
        break;
      case SweepAxis::NSlots:
        if (!is_whole(p) || p < 1) throw ConfigError(fmt::format("sweep: L = {} must be a positive integer", p));
        break;
    }
  }
}

}  // namespace irsdoa
