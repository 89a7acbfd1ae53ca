#pragma once

#include <complex>

#include <Eigen/Dense>

namespace irsdoa {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Eigenpairs of a Hermitian matrix; eigenvalues ascending, eigenvectors in
/// the columns of a unitary matrix.
struct HermitianEig {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;
};

/// (A + A^H) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& a);

bool all_finite(const ComplexMatrix& a);

/// Eigendecomposition of the Hermitian part of `a`.
///
/// Throws DimensionError for empty or non-square input and NumericError for
/// non-finite entries.
HermitianEig hermitian_eig(const ComplexMatrix& a);

/// Frobenius-nearest positive semidefinite matrix: V diag(max(lambda, 0)) V^H.
ComplexMatrix psd_project(const ComplexMatrix& a);

/// Solves A X = B for Hermitian positive definite A.
///
/// When the smallest eigenvalue of A is below 1e-12 * trace(A) / n the matrix
/// is shifted by 1e-10 * trace(A) / n before solving. A matrix that is still
/// not positive definite raises SingularityError carrying its smallest
/// eigenvalue.
ComplexMatrix hermitian_solve(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace irsdoa
