#include "irsdoa/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

#include "irsdoa/errors.hpp"

namespace irsdoa {

std::vector<double> angle_grid(double step) {
  if (!(step > 0.0) || step > 0.1) {
    throw ConfigError(fmt::format("grid step {} rad outside (0, 0.1]", step));
  }
  const double half_pi = std::numbers::pi / 2.0;
  const auto n = static_cast<std::size_t>(std::floor(std::numbers::pi / step * (1.0 + 1e-12)));
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = half_pi - static_cast<double>(n - 1 - i) * step;
  return grid;
}

Spectrum dual_spectrum(const ComplexMatrix& g, const ArrayGeometry& geom, double grid_step) {
  if (g.rows() != geom.n_ses || g.cols() != geom.n_res) {
    throw DimensionError(fmt::format("dual_spectrum: G is {}x{}, expected {}x{}", g.rows(),
                                     g.cols(), geom.n_ses, geom.n_res));
  }
  Spectrum s;
  s.grid = angle_grid(grid_step);
  s.values.resize(s.grid.size());
  for (std::size_t i = 0; i < s.grid.size(); ++i) {
    const double theta = s.grid[i];
    const ComplexVector b = ula_steering(geom.n_ses, se_frequency(theta));
    const ComplexVector a = ula_steering(geom.n_res, re_frequency(theta, geom.irs_arrival_angle));
    // |a^H G^H b| = |b^H G a|
    s.values[i] = std::abs(b.dot(g * a));
  }
  return s;
}

DoaEstimate pick_peaks(const Spectrum& spectrum, std::size_t k, bool refine) {
  const auto& f = spectrum.values;
  const auto& grid = spectrum.grid;
  if (k < 1) throw ConfigError("pick_peaks: K must be >= 1");
  if (f.size() != grid.size() || grid.size() < 3) {
    throw DimensionError("pick_peaks: need a spectrum with at least 3 samples");
  }

  std::vector<std::size_t> maxima;
  for (std::size_t i = 1; i + 1 < f.size(); ++i) {
    if (f[i] > f[i - 1] && f[i] > f[i + 1]) maxima.push_back(i);
  }
  // Largest first; indices ascend with angle, so ties go to the smaller angle.
  auto by_value = [&f](std::size_t a, std::size_t b) { return f[a] > f[b] || (f[a] == f[b] && a < b); };
  std::sort(maxima.begin(), maxima.end(), by_value);

  DoaEstimate est;
  std::vector<std::size_t> chosen(maxima.begin(),
                                  maxima.begin() + static_cast<std::ptrdiff_t>(std::min(k, maxima.size())));
  std::vector<bool> is_peak(f.size(), false);
  for (std::size_t i : chosen) is_peak[i] = true;

  if (chosen.size() < k) {
    est.degraded = true;
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (!is_peak[i]) rest.push_back(i);
    }
    const std::size_t need = std::min(k - chosen.size(), rest.size());
    std::partial_sort(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(need), rest.end(),
                      by_value);
    chosen.insert(chosen.end(), rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(need));
  }

  std::vector<std::pair<double, double>> found;  // (angle, value)
  for (std::size_t i : chosen) {
    double angle = grid[i];
    if (refine && is_peak[i]) {
      const double y0 = f[i - 1], y1 = f[i], y2 = f[i + 1];
      const double denom = y0 - 2.0 * y1 + y2;
      if (denom < 0.0) {
        const double offset = std::clamp(0.5 * (y0 - y2) / denom, -1.0, 1.0);
        angle += offset * (offset >= 0.0 ? grid[i + 1] - grid[i] : grid[i] - grid[i - 1]);
      }
    }
    found.emplace_back(angle, f[i]);
  }
  std::sort(found.begin(), found.end());
  for (const auto& [angle, value] : found) {
    est.angles.push_back(angle);
    est.peak_values.push_back(value);
  }
  return est;
}

}  // namespace irsdoa
