#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "irsdoa/numerics.hpp"
#include "irsdoa/scene.hpp"

namespace irsdoa {

/// Fisher information for xi = [theta_1..theta_K, Re alpha_1..Re alpha_K,
/// Im alpha_1..Im alpha_K]. The nuisance ordering follows the [1, j] (x) (.)
/// block layout; it does not affect the angle bounds.
struct FisherMatrix {
  RealMatrix f;  // 3K x 3K
  std::size_t k = 0;
  /// Some target sits at |theta| = 90 deg, where its angle derivative vanishes.
  bool endfire = false;
};

struct CrbReport {
  std::vector<double> crb_per_target;  // rad^2
  double rcrb = 0.0;                   // rad
  std::optional<double> closed_form_single;
  bool endfire_flag = false;
};

/// Fisher matrix of the angles and complex gains for the measurement matrix D,
/// using R_D = D D^H.
FisherMatrix fisher_matrix(const SceneConfig& scene, const MeasurementMatrix& d);

/// Same, for a given N x N measurement covariance R_D (e.g. L I).
FisherMatrix fisher_matrix(const SceneConfig& scene, const ComplexMatrix& covariance);

/// CRB(theta_k) = [F^{-1}]_{k,k}; rcrb = sqrt(mean CRB).
///
/// Throws SingularityError when the smallest eigenvalue of F is not above
/// 1e-12 * trace(F) / 3K.
CrbReport crb_values(const FisherMatrix& fisher);

/// Single-target bound for R_D = L I:
///   6 sigma^2 / (L N_b P_t |alpha_g|^2 |alpha_0|^2 pi^2 cos^2(theta_0) M N (M^2 + N^2 - 2)).
/// Throws ConfigError when K != 1 and EndfireError at |theta_0| = 90 deg.
double closed_form_single_crb(const SceneConfig& scene);

}  // namespace irsdoa
