#include "irsdoa/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include <fmt/format.h>

#include "irsdoa/crb.hpp"
#include "irsdoa/errors.hpp"
#include "irsdoa/random.hpp"
#include "irsdoa/spectrum.hpp"

namespace irsdoa {

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::TxPowerDbm: return "tx_power_dbm";
    case SweepAxis::NTargets: return "n_targets";
    case SweepAxis::NSesTradeoff: return "n_ses_tradeoff";
    case SweepAxis::NSlots: return "n_slots";
  }
  return "?";
}

std::string_view to_string(Estimator estimator) {
  return estimator == Estimator::Anm ? "ANM" : "MUSIC";
}

double matched_squared_error(std::vector<double> truth, std::vector<double> estimate) {
  if (truth.size() != estimate.size()) {
    throw DimensionError(fmt::format("matching {} estimates against {} true angles", estimate.size(),
                                     truth.size()));
  }
  std::sort(truth.begin(), truth.end());
  std::sort(estimate.begin(), estimate.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double e = truth[i] - estimate[i];
    sum += e * e;
  }
  return sum;
}

RmseResult rmse(std::span<const TrialRecord> records) {
  RmseResult out;
  double sum = 0.0;
  std::size_t terms = 0;
  for (const TrialRecord& r : records) {
    if (r.failed) {
      ++out.failed;
      continue;
    }
    ++out.used;
    sum += r.squared_error_sum;
    terms += r.true_angles_deg.size();
  }
  if (out.used == 0 || terms == 0) throw EmptyResultError("no usable trials for RMSE");
  out.rmse_deg = std::sqrt(sum / static_cast<double>(terms));
  return out;
}

SceneConfig scene_at(const SweepSpec& spec, double v) {
  SceneConfig scene = spec.base_scene;
  switch (spec.axis) {
    case SweepAxis::TxPowerDbm:
      scene.tx_power = dbm_to_watts(v);
      break;
    case SweepAxis::NTargets: {
      const Target base = scene.targets.empty() ? Target{} : scene.targets.front();
      scene.targets.clear();
      for (int k = 0; k < static_cast<int>(v); ++k) {
        Target t = base;
        t.angle = deg_to_rad(kTargetAngleOrderDeg[k]);
        scene.targets.push_back(t);
      }
      break;
    }
    case SweepAxis::NSesTradeoff:
      scene.n_ses = static_cast<int>(v);
      scene.n_res = *spec.element_budget - scene.n_ses;
      scene.n_slots = scene.n_res;
      break;
    case SweepAxis::NSlots:
      scene.n_slots = static_cast<int>(v);
      break;
  }
  scene.validate();
  return scene;
}

std::vector<TrialRecord> run_trial(const SceneConfig& scene, const MeasurementSpec& measurement,
                                   const std::vector<Estimator>& estimators, const AnmConfig& anm,
                                   const MusicConfig& music, std::uint64_t master_seed,
                                   std::size_t trial_index, double axis_value, bool noiseless) {
  const Rng trial = Rng(master_seed).split(trial_index);
  Rng d_rng = trial.split(stream::kMeasurement);
  Rng noise_rng = trial.split(stream::kNoise);
  const MeasurementMatrix d = build_measurement(measurement.kind, scene.n_res, scene.n_slots, d_rng);
  const EchoData echo = synthesize_echo(scene, d, noise_rng, noiseless);
  const ArrayGeometry geom = ArrayGeometry::of(scene);
  const std::size_t k = scene.n_targets();

  std::vector<double> truth;
  for (const Target& t : scene.targets) truth.push_back(rad_to_deg(t.angle));
  std::sort(truth.begin(), truth.end());

  std::vector<TrialRecord> out;
  for (Estimator est : estimators) {
    TrialRecord r;
    r.axis_value = axis_value;
    r.trial_index = trial_index;
    r.estimator = est;
    r.true_angles_deg = truth;
    try {
      const DoaEstimate e = est == Estimator::Anm ? estimate_anm(echo, d, k, anm, geom)
                                                  : estimate_music(echo, k, music);
      for (double a : e.angles) r.estimated_angles_deg.push_back(rad_to_deg(a));
      std::sort(r.estimated_angles_deg.begin(), r.estimated_angles_deg.end());
      r.squared_error_sum = matched_squared_error(truth, r.estimated_angles_deg);
      r.solver_iters = e.solver_iters;
      r.degraded = e.degraded || !e.converged;
    } catch (const Error&) {
      r.estimated_angles_deg.clear();
      r.squared_error_sum = 0.0;
      r.failed = true;
    }
    out.push_back(std::move(r));
  }
  return out;
}

double sweep_rcrb_deg(const SceneConfig& scene, MeasurementKind kind) {
  try {
    const FisherMatrix f =
        kind == MeasurementKind::Dft
            ? fisher_matrix(scene, build_measurement(MeasurementKind::Dft, scene.n_res, scene.n_slots,
                                                     std::uint64_t{0}))
            : fisher_matrix(scene, ComplexMatrix(static_cast<double>(scene.n_slots) *
                                                 ComplexMatrix::Identity(scene.n_res, scene.n_res)));
    return crb_values(f).rcrb * 180.0 / std::numbers::pi;
  } catch (const NumericError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

SweepResult run_sweep(const SweepSpec& spec, std::size_t jobs) {
  spec.validate();
  std::vector<SceneConfig> scenes;
  for (double v : spec.points) scenes.push_back(scene_at(spec, v));

  const std::size_t n_tasks = spec.points.size() * spec.trials;
  std::vector<std::vector<TrialRecord>> slots(n_tasks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < n_tasks; i = next++) {
      const std::size_t p = i / spec.trials;
      const std::size_t t = i % spec.trials;
      try {
        slots[i] = run_trial(scenes[p], spec.measurement, spec.estimators, spec.anm, spec.music,
                             spec.master_seed, t, spec.points[p], spec.noiseless);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(n_tasks, 1));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  SweepResult result;
  const bool expected_cov = spec.measurement.kind == MeasurementKind::RandomPhase;
  for (std::size_t p = 0; p < spec.points.size(); ++p) {
    const double rcrb = sweep_rcrb_deg(scenes[p], spec.measurement.kind);
    for (Estimator est : spec.estimators) {
      std::vector<TrialRecord> subset;
      for (std::size_t t = 0; t < spec.trials; ++t) {
        for (const TrialRecord& r : slots[p * spec.trials + t]) {
          if (r.estimator == est) subset.push_back(r);
        }
      }
      SummaryRow row;
      row.axis = spec.axis;
      row.axis_value = spec.points[p];
      row.estimator = est;
      row.rcrb_deg = rcrb;
      row.trials = subset.size();
      row.rcrb_expected_covariance = expected_cov;
      try {
        const RmseResult r = rmse(subset);
        row.rmse_deg = r.rmse_deg;
        row.failures = r.failed;
      } catch (const EmptyResultError&) {
        row.rmse_deg = std::numeric_limits<double>::quiet_NaN();
        row.failures = subset.size();
      }
      result.summary.push_back(row);
    }
  }
  for (auto& s : slots) {
    for (auto& r : s) result.records.push_back(std::move(r));
  }
  return result;
}

}  // namespace irsdoa
