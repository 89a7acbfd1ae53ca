#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "irsdoa/numerics.hpp"
#include "irsdoa/scene.hpp"

namespace irsdoa {

/// Sizes and the reference angle needed to evaluate steering vectors.
struct ArrayGeometry {
  Eigen::Index n_ses = 0;
  Eigen::Index n_res = 0;
  double irs_arrival_angle = 0.0;

  static ArrayGeometry of(const SceneConfig& scene) {
    return {scene.n_ses, scene.n_res, scene.irs_arrival_angle};
  }
};

struct Spectrum {
  std::vector<double> grid;    // rad, strictly increasing, inside (-pi/2, pi/2]
  std::vector<double> values;  // >= 0
};

struct DoaEstimate {
  std::vector<double> angles;  // rad, ascending
  std::vector<double> peak_values;
  std::string method;
  /// Fewer than K strict local maxima were found.
  bool degraded = false;
  std::optional<int> solver_iters;
  bool converged = true;
};

/// Uniform grid ending at pi/2 with spacing `step`, first point > -pi/2.
std::vector<double> angle_grid(double step);

/// f(theta) = |a_r^H(theta) G^H b(theta)| with b at pi sin(theta) and a_r at
/// pi (sin(theta) - sin(theta_BI)).
Spectrum dual_spectrum(const ComplexMatrix& g, const ArrayGeometry& geom, double grid_step);

/// K largest strict local maxima of the sampled spectrum, optionally refined
/// by the vertex of the parabola through the three samples around each
/// peak. Equal peak values are ranked by the smaller angle. If fewer than K
/// maxima exist the remaining slots take the largest remaining samples and
/// the estimate is flagged degraded.
DoaEstimate pick_peaks(const Spectrum& spectrum, std::size_t k, bool refine);

}  // namespace irsdoa
