#include "irsdoa/music.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "irsdoa/errors.hpp"

namespace irsdoa {

void MusicConfig::validate() const {
  if (!(grid_step > 0.0) || grid_step > 0.1) throw ConfigError("music: grid_step outside (0, 0.1] rad");
}

ComplexMatrix sample_covariance(const EchoData& echo) {
  if (echo.y.rows() < 1 || echo.y.cols() < 1) throw DimensionError("sample_covariance: empty Y");
  return hermitian_part(echo.y * echo.y.adjoint() / static_cast<double>(echo.y.cols()));
}

ComplexMatrix noise_subspace(const ComplexMatrix& covariance, std::size_t k) {
  const auto m = static_cast<std::size_t>(covariance.rows());
  if (k >= m) {
    throw DegenerateSubspaceError(
        fmt::format("music: K = {} sources need more than M = {} sensing elements", k, m));
  }
  // Ascending eigenvalues: the first M - K columns span the noise subspace.
  const HermitianEig eig = hermitian_eig(covariance);
  return eig.eigenvectors.leftCols(static_cast<Eigen::Index>(m - k));
}

Spectrum music_spectrum(const ComplexMatrix& noise_basis, double grid_step) {
  Spectrum s;
  s.grid = angle_grid(grid_step);
  s.values.resize(s.grid.size());
  for (std::size_t i = 0; i < s.grid.size(); ++i) {
    const ComplexVector b = ula_steering(noise_basis.rows(), se_frequency(s.grid[i]));
    const double denom = (noise_basis.adjoint() * b).squaredNorm();
    s.values[i] = 1.0 / std::max(denom, kMusicDenominatorFloor);
  }
  return s;
}

DoaEstimate estimate_music(const EchoData& echo, std::size_t k, const MusicConfig& cfg) {
  cfg.validate();
  if (k < 1) throw ConfigError("music: K must be >= 1");
  const ComplexMatrix en = noise_subspace(sample_covariance(echo), k);
  DoaEstimate est = pick_peaks(music_spectrum(en, cfg.grid_step), k, cfg.refine);
  est.method = "MUSIC";
  return est;
}

}  // namespace irsdoa
