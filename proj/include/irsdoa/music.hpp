#pragma once

#include <cstddef>

#include "irsdoa/numerics.hpp"
#include "irsdoa/scene.hpp"
#include "irsdoa/spectrum.hpp"

namespace irsdoa {

struct MusicConfig {
  double grid_step = deg_to_rad(0.02);
  bool refine = true;

  void validate() const;
};

/// Floor on ||E_n^H b||^2 in the pseudo-spectrum denominator.
inline constexpr double kMusicDenominatorFloor = 1e-24;

/// Y Y^H / L.
ComplexMatrix sample_covariance(const EchoData& echo);

/// Eigenvectors of the M - K smallest eigenvalues of the sample covariance.
/// Throws DegenerateSubspaceError when K >= M.
ComplexMatrix noise_subspace(const ComplexMatrix& covariance, std::size_t k);

/// P(theta) = 1 / max(||E_n^H b(theta)||^2, floor).
Spectrum music_spectrum(const ComplexMatrix& noise_basis, double grid_step);

/// Subspace estimate from the M sensing elements only.
DoaEstimate estimate_music(const EchoData& echo, std::size_t k, const MusicConfig& cfg);

}  // namespace irsdoa
