#pragma once

#include <cstddef>
#include <vector>

#include "irsdoa/numerics.hpp"
#include "irsdoa/scene.hpp"
#include "irsdoa/spectrum.hpp"

namespace irsdoa {

inline constexpr double kDefaultRho = 1000.0;

/// beta = sqrt(1000 N), which together with rho = 1000 gives rho = beta^2 / N.
double default_beta(int n_res);

struct AnmConfig {
  /// 0 selects default_beta(N) for whatever N the problem has.
  double beta = 0.0;
  double rho = kDefaultRho;
  double admm_penalty = 1.0;
  double tolerance = 1e-6;
  int max_iters = 20000;
  double grid_step = deg_to_rad(0.02);
  bool refine = true;
  /// Keep the objective value of every iterate in DualSolution::objective_trace.
  bool record_objective = false;

  static AnmConfig defaults_for(int n_res);
  /// Copy with an automatic beta replaced by default_beta(n_res).
  AnmConfig resolved(int n_res) const;
  void validate() const;
};

/// Data of the dual program for one (Y, D) pair:
///   min_G tr[(C - G) R (C - G)^H],  C = Y D^H,  R = (D D^H)^{-1}.
class AnmProblem {
 public:
  static AnmProblem build(const EchoData& echo, const MeasurementMatrix& d);

  const ComplexMatrix& c() const { return c_; }
  const ComplexMatrix& r() const { return r_; }
  /// Eigendecomposition of R, reused by every G-update of the solver.
  const HermitianEig& r_eig() const { return r_eig_; }
  Eigen::Index n_ses() const { return c_.rows(); }
  Eigen::Index n_res() const { return c_.cols(); }

  double objective(const ComplexMatrix& g) const;

 private:
  ComplexMatrix c_;
  ComplexMatrix r_;
  HermitianEig r_eig_;
};

struct DualSolution {
  ComplexMatrix g;  // M x N
  ComplexMatrix w;  // M x M Hermitian
  double objective = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double penalty = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> objective_trace;
};

/// Euclidean projection of a Hermitian matrix onto
/// { W : tr(W) = trace, sum_m W(m, m+v) = 0 for v != 0 }.
ComplexMatrix project_trace_offsets(const ComplexMatrix& w, double trace);

/// [[W, G], [G^H, rho I]].
ComplexMatrix bordered(const ComplexMatrix& w, const ComplexMatrix& g, double rho);

/// Solves
///   min tr[(C - G) R (C - G)^H]
///   s.t. [[W, G], [G^H, rho I]] >= 0, tr(W) = beta^2 / (rho N),
///        sum_m W(m, m+v) = 0 for v != 0
/// by consensus ADMM on the bordered matrix with residual-balanced penalty.
///
/// The iteration runs on the congruent program with G' = G sqrt(N) / beta,
/// W' = W rho N / beta^2, whose bordered matrix is [[W', G'], [G'^H, I]] and
/// whose trace target is 1; rho = 1000 next to tr(W) = 1 otherwise stalls
/// the splitting. Residuals are reported in the scaled variables: primal
/// ||S - T|| / max(1, ||S||), dual penalty ||S_t - S_{t-1}|| / max(||dual||,
/// ||C' R||), the second normalization tracking the data scale so that
/// echoes far below beta still converge to the unconstrained fit.
DualSolution solve_dual(const AnmProblem& problem, const AnmConfig& cfg);

/// build_problem -> solve_dual -> dual_spectrum -> pick_peaks.
DoaEstimate estimate_anm(const EchoData& echo, const MeasurementMatrix& d, std::size_t k,
                         const AnmConfig& cfg, const ArrayGeometry& geom);

}  // namespace irsdoa
