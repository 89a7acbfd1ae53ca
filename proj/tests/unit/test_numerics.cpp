#include <doctest.h>

#include <random>

#include "irsdoa/errors.hpp"
#include "irsdoa/numerics.hpp"

using namespace irsdoa;

namespace {

ComplexMatrix random_complex(int rows, int cols, std::mt19937_64& gen) {
  std::normal_distribution<double> n;
  ComplexMatrix a(rows, cols);
  for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = Complex(n(gen), n(gen));
  return a;
}

ComplexMatrix random_hermitian(int n, std::mt19937_64& gen) {
  const ComplexMatrix a = random_complex(n, n, gen);
  return (a + a.adjoint()) / 2.0;
}

double min_eig(const ComplexMatrix& a) { return hermitian_eig(a).eigenvalues.minCoeff(); }

}  // namespace

TEST_SUITE("numerics") {

TEST_CASE("eig of identity and diagonal") {
  const HermitianEig e = hermitian_eig(ComplexMatrix::Identity(2, 2));
  CHECK(e.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(e.eigenvalues(1) == doctest::Approx(1.0));
  CHECK((e.eigenvectors.adjoint() * e.eigenvectors - ComplexMatrix::Identity(2, 2)).norm() < 1e-12);

  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = -1.0;
  const HermitianEig f = hermitian_eig(d);
  CHECK(f.eigenvalues(0) == doctest::Approx(-1.0));
  CHECK(f.eigenvalues(1) == doctest::Approx(3.0));
}

TEST_CASE("eig reconstructs random hermitian matrices") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 7;
    const ComplexMatrix a = random_hermitian(n, gen);
    const HermitianEig e = hermitian_eig(a);
    const ComplexMatrix& v = e.eigenvectors;
    const ComplexMatrix rec = v * e.eigenvalues.cast<Complex>().asDiagonal() * v.adjoint();
    CHECK((rec - a).norm() <= 1e-10 * a.norm());
    CHECK((v.adjoint() * v - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-10);
    for (int i = 1; i < n; ++i) CHECK(e.eigenvalues(i - 1) <= e.eigenvalues(i));
    const double tr = a.trace().real();
    CHECK(std::abs(e.eigenvalues.sum() - tr) <= 1e-10 * std::abs(tr) + 1e-12);
  }
}

TEST_CASE("eig symmetrizes slightly non-hermitian input") {
  std::mt19937_64 gen(8);
  const ComplexMatrix a = random_hermitian(5, gen);
  ComplexMatrix b = a;
  b(0, 1) += Complex(1e-10, 0);
  const HermitianEig e = hermitian_eig(b);
  CHECK((e.eigenvalues - hermitian_eig(a).eigenvalues).norm() < 1e-9);
}

TEST_CASE("eig input errors") {
  CHECK_THROWS_AS(hermitian_eig(ComplexMatrix::Zero(2, 3)), DimensionError);
  CHECK_THROWS_AS(hermitian_eig(ComplexMatrix()), DimensionError);
  ComplexMatrix bad = ComplexMatrix::Identity(3, 3);
  bad(1, 2) = Complex(std::nan(""), 0);
  CHECK_THROWS_AS(hermitian_eig(bad), NumericError);
  bad(1, 2) = Complex(0, INFINITY);
  CHECK_THROWS_AS(psd_project(bad), NumericError);
}

TEST_CASE("psd_project fixed point and clamp") {
  std::mt19937_64 gen(9);
  const ComplexMatrix x = random_complex(5, 5, gen);
  const ComplexMatrix p = x * x.adjoint();
  CHECK((psd_project(p) - p).norm() <= 1e-10 * p.norm());

  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = -3.0;
  ComplexMatrix expect = ComplexMatrix::Zero(2, 2);
  expect(0, 0) = 2.0;
  CHECK((psd_project(d) - expect).norm() < 1e-14);
}

TEST_CASE("psd_project is nearer than random PSD matrices") {
  std::mt19937_64 gen(10);
  const ComplexMatrix a = random_hermitian(4, gen);
  const ComplexMatrix p = psd_project(a);
  const double best = (a - p).norm();
  CHECK(min_eig(p) >= -1e-10 * a.norm());
  CHECK((p - p.adjoint()).norm() == 0.0);
  int beaten = 0;
  for (int i = 0; i < 1000; ++i) {
    // Half the samples are perturbations of the projection itself.
    ComplexMatrix b;
    if (i % 2 == 0) {
      const ComplexMatrix x = random_complex(4, 1 + i % 4, gen);
      b = x * x.adjoint() * (0.5 * (i % 7 + 1) / 7.0);
    } else {
      const ComplexMatrix x = random_complex(4, 4, gen) * 0.05;
      b = psd_project(p + (x + x.adjoint()) / 2.0);
    }
    if ((a - b).norm() < best - 1e-12) ++beaten;
  }
  CHECK(beaten == 0);
}

TEST_CASE("psd_project is idempotent") {
  std::mt19937_64 gen(11);
  for (int n : {2, 5, 12}) {
    const ComplexMatrix a = random_hermitian(n, gen);
    const ComplexMatrix p = psd_project(a);
    CHECK((psd_project(p) - p).norm() <= 1e-10 * std::max(1.0, p.norm()));
  }
}

TEST_CASE("hermitian_solve identities") {
  std::mt19937_64 gen(12);
  const ComplexMatrix b = random_complex(4, 3, gen);
  CHECK((hermitian_solve(ComplexMatrix::Identity(4, 4), b) - b).norm() < 1e-14);
  const ComplexMatrix x = hermitian_solve(2.0 * ComplexMatrix::Identity(3, 3), ComplexMatrix::Identity(3, 3));
  CHECK((x - 0.5 * ComplexMatrix::Identity(3, 3)).norm() < 1e-14);
}

TEST_CASE("hermitian_solve residual on random PD systems") {
  std::mt19937_64 gen(13);
  for (int n : {2, 6, 16}) {
    const ComplexMatrix x = random_complex(n, n, gen);
    const ComplexMatrix a = x * x.adjoint() + 0.1 * ComplexMatrix::Identity(n, n);
    const ComplexMatrix b = random_complex(n, 2, gen);
    const ComplexMatrix sol = hermitian_solve(a, b);
    CHECK((a * sol - b).norm() <= 1e-8 * b.norm());
  }
}

TEST_CASE("hermitian_solve regularizes rank-deficient PSD input") {
  // Rank 1 with positive trace: shifted by 1e-10 trace / n, no error.
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 0) = 1.0;
  const ComplexMatrix x = hermitian_solve(a, ComplexMatrix::Identity(2, 2));
  CHECK(std::abs(x(0, 0) - Complex(1.0 / (1.0 + 5e-11), 0)) < 1e-9);
  CHECK(x(1, 1).real() == doctest::Approx(2e10).epsilon(1e-9));
}

TEST_CASE("hermitian_solve rejects indefinite or zero matrices") {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = -1.0;
  try {
    hermitian_solve(a, ComplexMatrix::Identity(2, 2));
    FAIL("expected SingularityError");
  } catch (const SingularityError& e) {
    CHECK(e.eigenvalue() < 0.0);
  }
  CHECK_THROWS_AS(hermitian_solve(ComplexMatrix::Zero(3, 3), ComplexMatrix::Identity(3, 3)),
                  SingularityError);
  CHECK_THROWS_AS(hermitian_solve(ComplexMatrix::Identity(3, 3), ComplexMatrix::Identity(2, 2)),
                  DimensionError);
}

TEST_CASE("operations are deterministic") {
  std::mt19937_64 gen(14);
  const ComplexMatrix a = random_hermitian(8, gen);
  CHECK(psd_project(a) == psd_project(a));
  CHECK(hermitian_eig(a).eigenvectors == hermitian_eig(a).eigenvectors);
}

}
