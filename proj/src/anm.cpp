#include "irsdoa/anm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "irsdoa/errors.hpp"

namespace irsdoa {

double default_beta(int n_res) {
  if (n_res < 1) throw ConfigError("default_beta: N must be >= 1");
  return std::sqrt(1000.0 * n_res);
}

AnmConfig AnmConfig::defaults_for(int n_res) {
  AnmConfig cfg;
  cfg.beta = default_beta(n_res);
  return cfg;
}

AnmConfig AnmConfig::resolved(int n_res) const {
  AnmConfig out = *this;
  if (out.beta == 0.0) out.beta = default_beta(n_res);
  return out;
}

void AnmConfig::validate() const {
  if (!(beta > 0.0)) throw ConfigError("anm: beta must be positive");
  if (!(rho > 0.0)) throw ConfigError("anm: rho must be positive");
  if (!(admm_penalty > 0.0)) throw ConfigError("anm: admm_penalty must be positive");
  if (!(tolerance > 0.0)) throw ConfigError("anm: tolerance must be positive");
  if (max_iters < 1) throw ConfigError("anm: max_iters must be >= 1");
  if (!(grid_step > 0.0) || grid_step > 0.1) throw ConfigError("anm: grid_step outside (0, 0.1] rad");
}

AnmProblem AnmProblem::build(const EchoData& echo, const MeasurementMatrix& d) {
  if (echo.y.cols() != d.d.cols()) {
    throw DimensionError(fmt::format("anm: Y has {} columns but D has {}", echo.y.cols(), d.d.cols()));
  }
  if (echo.y.rows() < 1 || d.d.rows() < 1) throw DimensionError("anm: empty Y or D");
  AnmProblem p;
  p.c_ = echo.y * d.d.adjoint();
  const ComplexMatrix dd = d.d * d.d.adjoint();
  p.r_ = hermitian_part(hermitian_solve(dd, ComplexMatrix::Identity(dd.rows(), dd.cols())));
  p.r_eig_ = hermitian_eig(p.r_);
  return p;
}

double AnmProblem::objective(const ComplexMatrix& g) const {
  const ComplexMatrix e = c_ - g;
  return (e * r_ * e.adjoint()).trace().real();
}

ComplexMatrix project_trace_offsets(const ComplexMatrix& w, double trace) {
  const Eigen::Index m = w.rows();
  ComplexMatrix out = hermitian_part(w);
  for (Eigen::Index v = 1; v < m; ++v) {
    Complex sum = 0.0;
    for (Eigen::Index i = 0; i + v < m; ++i) sum += out(i, i + v);
    const Complex mean = sum / static_cast<double>(m - v);
    for (Eigen::Index i = 0; i + v < m; ++i) {
      out(i, i + v) -= mean;
      out(i + v, i) = std::conj(out(i, i + v));
    }
  }
  const double shift = (trace - out.trace().real()) / static_cast<double>(m);
  for (Eigen::Index i = 0; i < m; ++i) out(i, i) = Complex(out(i, i).real() + shift, 0.0);
  return out;
}

ComplexMatrix bordered(const ComplexMatrix& w, const ComplexMatrix& g, double rho) {
  const Eigen::Index m = w.rows();
  const Eigen::Index n = g.cols();
  ComplexMatrix s(m + n, m + n);
  s.topLeftCorner(m, m) = w;
  s.topRightCorner(m, n) = g;
  s.bottomLeftCorner(n, m) = g.adjoint();
  s.bottomRightCorner(n, n) = rho * ComplexMatrix::Identity(n, n);
  return s;
}

DualSolution solve_dual(const AnmProblem& problem, const AnmConfig& config) {
  const AnmConfig cfg = config.resolved(static_cast<int>(problem.n_res()));
  cfg.validate();
  const Eigen::Index m = problem.n_ses();
  const Eigen::Index n = problem.n_res();
  const double trace_w = cfg.beta * cfg.beta / (cfg.rho * static_cast<double>(n));
  const double g_scale = cfg.beta / std::sqrt(static_cast<double>(n));

  const ComplexMatrix cr = (problem.c() / g_scale) * problem.r();
  const double cr_norm = cr.norm();
  const RealVector& r_vals = problem.r_eig().eigenvalues;
  const ComplexMatrix& r_vecs = problem.r_eig().eigenvectors;

  ComplexMatrix g = ComplexMatrix::Zero(m, n);
  ComplexMatrix w = ComplexMatrix::Identity(m, m) / static_cast<double>(m);
  ComplexMatrix s = bordered(w, g, 1.0);
  ComplexMatrix u = ComplexMatrix::Zero(m + n, m + n);  // scaled dual variable
  double mu = cfg.admm_penalty;

  DualSolution best;
  double best_score = std::numeric_limits<double>::infinity();
  int performed = 0;
  auto record = [&](double primal, double dual, bool converged) {
    best.g = g_scale * g;
    best.w = trace_w * w;
    best.primal_residual = primal;
    best.dual_residual = dual;
    best.penalty = mu;
    best.converged = converged;
  };

  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    performed = iter;
    const ComplexMatrix v = s - u;

    // G-update: argmin tr[(C'-G) R (C'-G)^H] + mu ||G - P||^2, i.e.
    // G (R + mu I) = C' R + mu P.
    const ComplexMatrix p = 0.5 * (v.topRightCorner(m, n) + v.bottomLeftCorner(n, m).adjoint());
    const RealVector shifted_inv = (r_vals.array() + mu).inverse().matrix();
    g = ((cr + mu * p) * r_vecs) * shifted_inv.asDiagonal() * r_vecs.adjoint();

    w = project_trace_offsets(v.topLeftCorner(m, m), 1.0);

    const ComplexMatrix t = bordered(w, g, 1.0);
    const ComplexMatrix s_prev = std::move(s);
    s = psd_project(t + u);
    u += t - s;

    if (!all_finite(g) || !all_finite(u)) {
      throw NumericError(fmt::format("solve_dual: non-finite iterate at iteration {}", iter));
    }

    const double primal = (s - t).norm() / std::max(1.0, s.norm());
    const double dual_scale =
        std::max({(mu * u).norm(), cr_norm, std::numeric_limits<double>::min()});
    const double dual = mu * (s - s_prev).norm() / dual_scale;

    if (cfg.record_objective) best.objective_trace.push_back(problem.objective(g_scale * g));

    const bool done = primal < cfg.tolerance && dual < cfg.tolerance;
    const double score = std::max(primal, dual);
    if (done || score < best_score) {
      best_score = score;
      record(primal, dual, done);
    }
    if (done) break;

    if (primal > 10.0 * dual && mu < 1e10) {
      mu *= 2.0;
      u /= 2.0;
    } else if (dual > 10.0 * primal && mu > 1e-10) {
      mu /= 2.0;
      u *= 2.0;
    }
  }
  best.iterations = performed;
  best.objective = problem.objective(best.g);
  return best;
}

DoaEstimate estimate_anm(const EchoData& echo, const MeasurementMatrix& d, std::size_t k,
                         const AnmConfig& cfg, const ArrayGeometry& geom) {
  const AnmProblem problem = AnmProblem::build(echo, d);
  if (problem.n_ses() != geom.n_ses || problem.n_res() != geom.n_res) {
    throw DimensionError("estimate_anm: echo/measurement sizes do not match the array geometry");
  }
  const DualSolution sol = solve_dual(problem, cfg);
  const Spectrum spectrum = dual_spectrum(sol.g, geom, cfg.grid_step);
  DoaEstimate est = pick_peaks(spectrum, k, cfg.refine);
  est.method = "ANM";
  est.solver_iters = sol.iterations;
  est.converged = sol.converged;
  return est;
}

}  // namespace irsdoa
