#include "irsdoa/numerics.hpp"

#include <fmt/format.h>

#include "irsdoa/errors.hpp"

namespace irsdoa {

namespace {

void require_square(const ComplexMatrix& a, const char* op) {
  if (a.rows() == 0 || a.cols() == 0 || a.rows() != a.cols()) {
    throw DimensionError(fmt::format("{}: expected a non-empty square matrix, got {}x{}", op,
                                     a.rows(), a.cols()));
  }
}

void require_finite(const ComplexMatrix& a, const char* op) {
  if (!all_finite(a)) throw NumericError(fmt::format("{}: non-finite matrix entry", op));
}

}  // namespace

ComplexMatrix hermitian_part(const ComplexMatrix& a) { return 0.5 * (a + a.adjoint()); }

bool all_finite(const ComplexMatrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const Complex z = a(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  }
  return true;
}

HermitianEig hermitian_eig(const ComplexMatrix& a) {
  require_square(a, "hermitian_eig");
  require_finite(a, "hermitian_eig");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(a), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw NumericError("hermitian_eig: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix psd_project(const ComplexMatrix& a) {
  const HermitianEig eig = hermitian_eig(a);
  const RealVector clamped = eig.eigenvalues.cwiseMax(0.0);
  ComplexMatrix out = eig.eigenvectors * clamped.asDiagonal() * eig.eigenvectors.adjoint();
  return hermitian_part(out);
}

ComplexMatrix hermitian_solve(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_square(a, "hermitian_solve");
  if (b.rows() != a.rows()) {
    throw DimensionError(fmt::format("hermitian_solve: right-hand side has {} rows, expected {}",
                                     b.rows(), a.rows()));
  }
  require_finite(b, "hermitian_solve");
  const HermitianEig eig = hermitian_eig(a);
  const auto n = static_cast<double>(a.rows());
  const double mean_eig = eig.eigenvalues.sum() / n;
  const double smallest = eig.eigenvalues(0);

  RealVector lambda = eig.eigenvalues;
  if (!(mean_eig > 0.0)) {
    throw SingularityError(
        fmt::format("hermitian_solve: matrix is not positive definite (smallest eigenvalue {:.6g})",
                    smallest),
        smallest);
  }
  if (smallest < 1e-12 * mean_eig) lambda.array() += 1e-10 * mean_eig;
  if (!(lambda(0) > 0.0)) {
    throw SingularityError(
        fmt::format("hermitian_solve: matrix is singular (smallest eigenvalue {:.6g})", smallest),
        smallest);
  }
  const RealVector inv = lambda.cwiseInverse();
  return eig.eigenvectors * (inv.asDiagonal() * (eig.eigenvectors.adjoint() * b));
}

}  // namespace irsdoa
