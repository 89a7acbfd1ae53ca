// irsdoa: simulate echoes, estimate angles, evaluate bounds and run sweeps.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "irsdoa/anm.hpp"
#include "irsdoa/config_io.hpp"
#include "irsdoa/crb.hpp"
#include "irsdoa/csv.hpp"
#include "irsdoa/errors.hpp"
#include "irsdoa/harness.hpp"
#include "irsdoa/music.hpp"
#include "irsdoa/scene.hpp"

namespace {

using namespace irsdoa;

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 1;

bool verbose = false;

void note(const std::string& msg) {
  if (verbose) std::cerr << msg << '\n';
}

MeasurementMatrix measurement_for(const SceneFile& file) {
  return build_measurement(file.measurement.kind, file.scene.n_res, file.scene.n_slots,
                           file.measurement.seed);
}

void cmd_simulate(const std::string& scene_path, const std::string& out, std::uint64_t seed,
                  bool noiseless) {
  const SceneFile file = load_scene(scene_path);
  const MeasurementMatrix d = measurement_for(file);
  const EchoData echo = synthesize_echo(file.scene, d, seed, noiseless);
  write_text(out, matrix_csv(echo.y));
  note(fmt::format("wrote {}x{} echo to {}", echo.y.rows(), echo.y.cols(), out));
}

void cmd_estimate(const std::string& scene_path, const std::string& method,
                  std::optional<int> k_opt, std::optional<double> grid_step_deg,
                  const std::string& out, std::uint64_t seed) {
  const SceneFile file = load_scene(scene_path);
  const int k = k_opt.value_or(static_cast<int>(file.scene.n_targets()));
  if (k < 1) throw ConfigError("--k must be >= 1");
  const MeasurementMatrix d = measurement_for(file);
  const EchoData echo = synthesize_echo(file.scene, d, seed);
  DoaEstimate est;
  if (method == "anm") {
    AnmConfig cfg;
    if (grid_step_deg) cfg.grid_step = deg_to_rad(*grid_step_deg);
    est = estimate_anm(echo, d, static_cast<std::size_t>(k), cfg, ArrayGeometry::of(file.scene));
  } else {
    MusicConfig cfg;
    if (grid_step_deg) cfg.grid_step = deg_to_rad(*grid_step_deg);
    est = estimate_music(echo, static_cast<std::size_t>(k), cfg);
  }
  write_text(out, estimate_csv(est));
  if (est.degraded) std::cerr << "warning: fewer than K spectral peaks were found\n";
  if (!est.converged) std::cerr << "warning: ANM solver hit its iteration limit\n";
}

void cmd_crb(const std::string& scene_path, bool closed_form, const std::string& out) {
  const SceneFile file = load_scene(scene_path);
  const FisherMatrix f = fisher_matrix(file.scene, measurement_for(file));
  CrbReport report = crb_values(f);
  if (closed_form) report.closed_form_single = closed_form_single_crb(file.scene);
  write_text(out, crb_csv(report, file.scene));
}

void cmd_sweep(const std::string& spec_path, const std::string& out, const std::string& detail,
               std::size_t jobs, std::optional<std::uint64_t> seed, bool full_scale) {
  SweepSpec spec = load_sweep(spec_path);
  if (seed) spec.master_seed = *seed;
  if (full_scale) {
    std::cerr << "warning: full scale (N = 64, L = 64) is much slower than the desk defaults\n";
    spec.base_scene.n_res = 64;
    spec.base_scene.n_slots = 64;
    spec.validate();
  }
  if (spec.measurement.kind == MeasurementKind::RandomPhase) {
    note("rcrb_deg uses the expected covariance L I for random-phase D");
  }
  const SweepResult result = run_sweep(spec, jobs);
  write_text(out, summary_csv(result.summary));
  if (!detail.empty()) write_text(detail, detail_csv(result.records));
  if (verbose) std::cerr << summary_csv(result.summary);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IRS multi-target angle estimation lab"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 42;
  app.add_flag("-v,--verbose", verbose, "Log progress to stderr");

  std::string scene_path, out, method = "anm", spec_path, detail;
  bool noiseless = false, closed_form = false, full_scale = false;
  std::optional<int> k;
  std::optional<double> grid_step_deg;
  std::size_t jobs = 1;
  std::optional<std::uint64_t> sweep_seed;

  auto* sim = app.add_subcommand("simulate", "Synthesize one echo matrix Y");
  sim->add_option("--scene", scene_path)->required()->check(CLI::ExistingFile);
  sim->add_option("--out", out)->required();
  sim->add_option("--seed", seed, "Noise seed")->capture_default_str();
  sim->add_flag("--noiseless", noiseless);

  auto* est = app.add_subcommand("estimate", "Estimate target angles from one echo");
  est->add_option("--scene", scene_path)->required()->check(CLI::ExistingFile);
  est->add_option("--method", method)->check(CLI::IsMember({"anm", "music"}))->capture_default_str();
  est->add_option("--k", k, "Number of targets (default: scene target count)");
  est->add_option("--grid-step-deg", grid_step_deg)->check(CLI::PositiveNumber);
  est->add_option("--seed", seed, "Noise seed")->capture_default_str();
  est->add_option("--out", out)->required();

  auto* crb = app.add_subcommand("crb", "Cramer-Rao bounds for the scene targets");
  crb->add_option("--scene", scene_path)->required()->check(CLI::ExistingFile);
  crb->add_flag("--closed-form", closed_form, "Also report the single-target closed form");
  crb->add_option("--out", out)->required();
  crb->add_option("--seed", seed, "Unused; accepted for uniformity");

  auto* sweep = app.add_subcommand("sweep", "Monte-Carlo RMSE sweep");
  sweep->add_option("--spec", spec_path)->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", out, "Summary CSV")->required();
  sweep->add_option("--detail", detail, "Per-trial CSV");
  sweep->add_option("--jobs", jobs)->check(CLI::PositiveNumber)->capture_default_str();
  sweep->add_option("--seed", sweep_seed, "Master seed (default: spec value, else 42)");
  sweep->add_flag("--full-scale", full_scale, "N = 64, L = 64");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*sim) cmd_simulate(scene_path, out, seed, noiseless);
    if (*est) cmd_estimate(scene_path, method, k, grid_step_deg, out, seed);
    if (*crb) cmd_crb(scene_path, closed_form, out);
    if (*sweep) cmd_sweep(spec_path, out, detail, jobs, sweep_seed, full_scale);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DimensionError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DegenerateSubspaceError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  return 0;
}
