#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "irsdoa/anm.hpp"
#include "irsdoa/music.hpp"
#include "irsdoa/scene.hpp"

namespace irsdoa {

enum class SweepAxis { TxPowerDbm, NTargets, NSesTradeoff, NSlots };
enum class Estimator { Anm, Music };

std::string_view to_string(SweepAxis axis);
std::string_view to_string(Estimator estimator);

struct MeasurementSpec {
  MeasurementKind kind = MeasurementKind::Dft;
  std::uint64_t seed = 0;
};

/// Target angles used on the n_targets axis, in the order they are added.
inline constexpr double kTargetAngleOrderDeg[] = {-60.0, 60.0, -45.0, 45.0, -30.0,
                                                  30.0,  -15.0, 15.0, 0.0};

struct SweepSpec {
  SweepAxis axis = SweepAxis::TxPowerDbm;
  std::vector<double> points;
  std::size_t trials = 100;
  std::uint64_t master_seed = 42;
  std::vector<Estimator> estimators{Estimator::Anm, Estimator::Music};
  SceneConfig base_scene = SceneConfig::desk_defaults();
  MeasurementSpec measurement;
  AnmConfig anm;  // beta = 0 follows N along the axis
  MusicConfig music;
  /// M + N for the n_ses_tradeoff axis.
  std::optional<int> element_budget;
  bool noiseless = false;

  void validate() const;
};

struct TrialRecord {
  double axis_value = 0.0;
  std::size_t trial_index = 0;
  Estimator estimator = Estimator::Anm;
  std::vector<double> true_angles_deg;       // ascending
  std::vector<double> estimated_angles_deg;  // ascending; empty when failed
  double squared_error_sum = 0.0;            // deg^2
  std::optional<int> solver_iters;
  bool degraded = false;
  bool failed = false;

  bool operator==(const TrialRecord&) const = default;
};

struct RmseResult {
  double rmse_deg = 0.0;
  std::size_t used = 0;
  std::size_t failed = 0;
};

/// RMSE over the non-failed records: sqrt(sum of squared errors / (K n)).
/// Throws EmptyResultError when every record failed.
RmseResult rmse(std::span<const TrialRecord> records);

/// Sum of squared differences after sorting both vectors ascending.
double matched_squared_error(std::vector<double> truth, std::vector<double> estimate);

/// Scene used at one point of the sweep axis.
SceneConfig scene_at(const SweepSpec& spec, double axis_value);

/// One Monte-Carlo trial. The measurement and noise streams derive from
/// (master_seed, trial_index) only; estimator failures become flags.
std::vector<TrialRecord> run_trial(const SceneConfig& scene, const MeasurementSpec& measurement,
                                   const std::vector<Estimator>& estimators, const AnmConfig& anm,
                                   const MusicConfig& music, std::uint64_t master_seed,
                                   std::size_t trial_index, double axis_value,
                                   bool noiseless = false);

struct SummaryRow {
  SweepAxis axis = SweepAxis::TxPowerDbm;
  double axis_value = 0.0;
  Estimator estimator = Estimator::Anm;
  double rmse_deg = 0.0;  // NaN when every trial failed
  double rcrb_deg = 0.0;  // NaN when the Fisher matrix is singular
  std::size_t trials = 0;
  std::size_t failures = 0;
  /// RCRB evaluated with R_D = L I instead of the realized D D^H.
  bool rcrb_expected_covariance = false;
};

struct SweepResult {
  std::vector<SummaryRow> summary;
  std::vector<TrialRecord> records;
};

/// RCRB in degrees for `scene`: realized DFT covariance, or L I for random
/// phases. NaN if the Fisher matrix is singular.
double sweep_rcrb_deg(const SceneConfig& scene, MeasurementKind kind);

/// Runs every axis point with `jobs` worker threads. Output does not depend on
/// `jobs`.
SweepResult run_sweep(const SweepSpec& spec, std::size_t jobs = 1);

}  // namespace irsdoa
