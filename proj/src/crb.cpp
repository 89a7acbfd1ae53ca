#include "irsdoa/crb.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "irsdoa/errors.hpp"

namespace irsdoa {

namespace {

constexpr double kEndfireCos = 1e-12;

bool any_endfire(const SceneConfig& scene) {
  for (const Target& t : scene.targets) {
    if (std::abs(std::cos(t.angle)) < kEndfireCos) return true;
  }
  return false;
}

// (A) o (B^T), entrywise.
ComplexMatrix hadamard_t(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a.cwiseProduct(b.transpose());
}

}  // namespace

FisherMatrix fisher_matrix(const SceneConfig& scene, const MeasurementMatrix& d) {
  if (d.d.rows() != scene.n_res || d.d.cols() != scene.n_slots) {
    throw DimensionError(fmt::format("fisher_matrix: D is {}x{}, scene expects {}x{}", d.d.rows(),
                                     d.d.cols(), scene.n_res, scene.n_slots));
  }
  return fisher_matrix(scene, ComplexMatrix(d.d * d.d.adjoint()));
}

FisherMatrix fisher_matrix(const SceneConfig& scene, const ComplexMatrix& covariance) {
  scene.validate();
  if (covariance.rows() != scene.n_res || covariance.cols() != scene.n_res) {
    throw DimensionError("fisher_matrix: covariance must be N x N");
  }
  const ModelMatrices mm = model_matrices(scene);
  const auto k = static_cast<Eigen::Index>(scene.n_targets());
  const ComplexMatrix& rd = covariance;
  const auto lam = mm.lambda.asDiagonal();

  const ComplexMatrix bb = mm.b.adjoint() * mm.b;
  const ComplexMatrix dbb = mm.bdot.adjoint() * mm.b;        // Bdot^H B
  const ComplexMatrix bdb = mm.b.adjoint() * mm.bdot;        // B^H Bdot
  const ComplexMatrix dbdb = mm.bdot.adjoint() * mm.bdot;    // Bdot^H Bdot
  const ComplexMatrix qrq = mm.q.adjoint() * rd * mm.q;
  const ComplexMatrix dqrq = mm.qdot.adjoint() * rd * mm.q;  // Qdot^H R Q
  const ComplexMatrix qrdq = mm.q.adjoint() * rd * mm.qdot;  // Q^H R Qdot
  const ComplexMatrix dqrdq = mm.qdot.adjoint() * rd * mm.qdot;

  const ComplexMatrix lam_h = mm.lambda.conjugate().asDiagonal();
  const ComplexMatrix t_tt = hadamard_t(dbdb, lam * qrq * lam_h) +
                             hadamard_t(dbb, lam * dqrq * lam_h) +
                             hadamard_t(bdb, lam * qrdq * lam_h) +
                             hadamard_t(bb, lam * dqrdq * lam_h);

  const double nbpt = static_cast<double>(scene.n_bs_antennas) * scene.tx_power;
  const Complex alpha_g = path_gain_bs_irs(scene.bs_irs_distance, scene.wavelength());
  const Complex gain = std::sqrt(nbpt) * alpha_g;

  // Gain-gain block: [1, j]^H [1, j] (x) c X = [[cX, j cX], [-j cX, cX]].
  const ComplexMatrix x = nbpt * std::norm(alpha_g) * hadamard_t(bb, qrq);
  // Angle-gain block: [Z, jZ] with Z the derivative w.r.t. Re(alpha).
  const ComplexMatrix z = gain * (hadamard_t(dbb, qrq * lam_h) + hadamard_t(bb, qrdq * lam_h));
  const Complex j(0.0, 1.0);

  RealMatrix f(3 * k, 3 * k);
  f.block(0, 0, k, k) = t_tt.real();
  f.block(0, k, k, k) = z.real();
  f.block(0, 2 * k, k, k) = (j * z).real();
  f.block(k, k, k, k) = x.real();
  f.block(k, 2 * k, k, k) = (j * x).real();
  f.block(2 * k, k, k, k) = (-j * x).real();
  f.block(2 * k, 2 * k, k, k) = x.real();
  f.block(k, 0, 2 * k, k) = f.block(0, k, k, 2 * k).transpose();
  f *= 2.0 / scene.noise_power;

  return {f, static_cast<std::size_t>(k), any_endfire(scene)};
}

CrbReport crb_values(const FisherMatrix& fisher) {
  const Eigen::Index n = fisher.f.rows();
  if (n == 0 || n != fisher.f.cols() || static_cast<std::size_t>(n) != 3 * fisher.k) {
    throw DimensionError("crb_values: Fisher matrix must be 3K x 3K");
  }
  const RealMatrix sym = 0.5 * (fisher.f + fisher.f.transpose());
  Eigen::SelfAdjointEigenSolver<RealMatrix> eig(sym);
  if (eig.info() != Eigen::Success) throw NumericError("crb_values: eigensolver failed");
  const double smallest = eig.eigenvalues()(0);
  const double threshold = 1e-12 * sym.trace() / static_cast<double>(n);
  if (!(smallest > threshold)) {
    throw SingularityError(
        fmt::format("crb_values: Fisher matrix is singular (smallest eigenvalue {:.6g}){}",
                    smallest, fisher.endfire ? "; a target is at endfire" : ""),
        smallest);
  }
  const RealMatrix inv = eig.eigenvectors() * eig.eigenvalues().cwiseInverse().asDiagonal() *
                         eig.eigenvectors().transpose();
  CrbReport report;
  report.endfire_flag = fisher.endfire;
  double sum = 0.0;
  for (std::size_t i = 0; i < fisher.k; ++i) {
    const double v = inv(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
    report.crb_per_target.push_back(v);
    sum += v;
  }
  report.rcrb = std::sqrt(sum / static_cast<double>(fisher.k));
  return report;
}

double closed_form_single_crb(const SceneConfig& scene) {
  scene.validate();
  if (scene.n_targets() != 1) {
    throw ConfigError(fmt::format("closed-form CRB needs exactly one target, got {}", scene.n_targets()));
  }
  const Target& t = scene.targets.front();
  const double c = std::cos(t.angle);
  if (std::abs(c) < kEndfireCos) throw EndfireError("closed-form CRB is unbounded at endfire");
  const double lambda_c = scene.wavelength();
  const double ag2 = std::norm(path_gain_bs_irs(scene.bs_irs_distance, lambda_c));
  const double a02 = std::norm(path_gain_target(t.distance, t.rcs, lambda_c));
  const double m = scene.n_ses;
  const double n = scene.n_res;
  const double pi2 = std::numbers::pi * std::numbers::pi;
  return 6.0 * scene.noise_power /
         (scene.n_slots * scene.n_bs_antennas * scene.tx_power * ag2 * a02 * pi2 * c * c * m * n *
          (m * m + n * n - 2.0));
}

}  // namespace irsdoa
