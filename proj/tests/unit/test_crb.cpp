#include <doctest.h>

#include <cmath>
#include <numbers>

#include "irsdoa/crb.hpp"
#include "irsdoa/errors.hpp"
#include "oracles.hpp"

using namespace irsdoa;
using std::numbers::pi;

namespace {

SceneConfig single(double deg, int n, int m) {
  SceneConfig s = SceneConfig::desk_defaults();
  s.n_res = n;
  s.n_ses = m;
  s.n_slots = n;
  s.targets = {{deg_to_rad(deg), 5.0, 10.0}};
  return s;
}

ComplexMatrix dft(const SceneConfig& s) {
  return build_measurement(MeasurementKind::Dft, s.n_res, s.n_slots, std::uint64_t{0}).d;
}

double max_rel_error(const RealMatrix& f, const RealMatrix& ref) {
  const double floor = 1e-8 * ref.norm();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const double err = std::abs(f(i) - ref(i));
    worst = std::max(worst, err / std::max(std::abs(ref(i)), floor));
  }
  return worst;
}

}  // namespace

TEST_SUITE("crb") {

TEST_CASE("Fisher matrix is homogeneous in the transmit power") {
  SceneConfig s = SceneConfig::desk_defaults();
  const MeasurementMatrix d = build_measurement(MeasurementKind::RandomPhase, s.n_res, s.n_slots,
                                                std::uint64_t{1});
  const RealMatrix f1 = fisher_matrix(s, d).f;
  s.tx_power *= 7.5;
  const RealMatrix f2 = fisher_matrix(s, d).f;
  CHECK((f2 - 7.5 * f1).cwiseAbs().maxCoeff() <= 1e-12 * f2.cwiseAbs().maxCoeff());
}

TEST_CASE("Fisher matrix matches finite differences, single target DFT") {
  const SceneConfig s = single(17.0, 16, 4);
  const ComplexMatrix d = dft(s);
  MeasurementMatrix m{MeasurementKind::Dft, d, 0};
  CHECK(max_rel_error(fisher_matrix(s, m).f, oracle::fisher_fd(s, d)) < 1e-4);
}

TEST_CASE("Fisher matrix matches finite differences, three targets random phase") {
  const SceneConfig s = SceneConfig::desk_defaults();
  const MeasurementMatrix d = build_measurement(MeasurementKind::RandomPhase, s.n_res, s.n_slots,
                                                std::uint64_t{8});
  CHECK(max_rel_error(fisher_matrix(s, d).f, oracle::fisher_fd(s, d.d)) < 1e-4);
}

TEST_CASE("Fisher matrix is symmetric PSD") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const auto c = oracle::random_fisher_case(seed, 1 + static_cast<int>(seed % 3));
    const FisherMatrix f = fisher_matrix(c.scene, MeasurementMatrix{MeasurementKind::RandomPhase, c.d, 0});
    CHECK(f.k == c.scene.targets.size());
    CHECK((f.f - f.f.transpose()).norm() <= 1e-9 * f.f.norm());
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<RealMatrix>(f.f).eigenvalues();
    CHECK(ev.minCoeff() >= -1e-9 * f.f.trace() / (3.0 * f.k));
  }
}

TEST_CASE("crb of a diagonal Fisher matrix") {
  FisherMatrix f;
  f.k = 1;
  f.f = RealMatrix::Zero(3, 3);
  f.f.diagonal() << 4.0, 2.0, 8.0;
  const CrbReport r = crb_values(f);
  REQUIRE(r.crb_per_target.size() == 1);
  CHECK(r.crb_per_target[0] == doctest::Approx(0.25));
  CHECK(r.rcrb == doctest::Approx(0.5));
}

TEST_CASE("crb halves when the power doubles") {
  SceneConfig s = SceneConfig::desk_defaults();
  const MeasurementMatrix d = build_measurement(MeasurementKind::Dft, s.n_res, s.n_slots, std::uint64_t{0});
  const CrbReport a = crb_values(fisher_matrix(s, d));
  s.tx_power *= 2.0;
  const CrbReport b = crb_values(fisher_matrix(s, d));
  for (std::size_t k = 0; k < a.crb_per_target.size(); ++k) {
    CHECK(b.crb_per_target[k] == doctest::Approx(a.crb_per_target[k] / 2).epsilon(1e-10));
    CHECK(a.crb_per_target[k] > 0.0);
  }
  double mean = 0;
  for (double c : a.crb_per_target) mean += c / 3.0;
  CHECK(a.rcrb == doctest::Approx(std::sqrt(mean)).epsilon(1e-14));
}

TEST_CASE("multi-target bound is above the isolated single-target bound") {
  const SceneConfig s = SceneConfig::desk_defaults();
  const MeasurementMatrix d = build_measurement(MeasurementKind::Dft, s.n_res, s.n_slots, std::uint64_t{0});
  const CrbReport multi = crb_values(fisher_matrix(s, d));
  for (std::size_t k = 0; k < s.targets.size(); ++k) {
    SceneConfig one = s;
    one.targets = {s.targets[k]};
    CHECK(multi.crb_per_target[k] >= closed_form_single_crb(one) * (1 - 1e-12));
  }
}

TEST_CASE("closed form against the general Fisher path") {
  for (int n : {8, 16, 32})
    for (int m : {2, 4, 8})
      for (double deg : {0.0, 20.0, -20.0, 45.0, -45.0}) {
        const SceneConfig s = single(deg, n, m);
        const MeasurementMatrix d = build_measurement(MeasurementKind::Dft, n, n, std::uint64_t{0});
        const double general = crb_values(fisher_matrix(s, d)).crb_per_target[0];
        const double closed = closed_form_single_crb(s);
        CHECK(std::abs(general - closed) <= 1e-8 * closed);
      }
}

TEST_CASE("closed form arithmetic") {
  SceneConfig a = single(10.0, 32, 4);
  SceneConfig b = single(10.0, 16, 4);
  b.n_slots = a.n_slots;
  const double ratio = closed_form_single_crb(a) / closed_form_single_crb(b);
  CHECK(ratio == doctest::Approx((16.0 * (256 + 14)) / (32.0 * (1024 + 14))).epsilon(1e-13));

  const double c89 = closed_form_single_crb(single(89.0, 16, 4));
  const double c0 = closed_form_single_crb(single(0.0, 16, 4));
  const double cos89 = std::cos(deg_to_rad(89.0));
  CHECK(std::abs(c89 / c0 * cos89 * cos89 - 1.0) < 1e-10);
}

TEST_CASE("element roles are interchangeable under identity covariance") {
  for (auto [n, m] : {std::pair{12, 5}, std::pair{7, 3}}) {
    SceneConfig a = single(23.0, n, m);
    SceneConfig b = single(23.0, m, n);
    a.n_slots = b.n_slots = 20;
    CHECK(closed_form_single_crb(a) == doctest::Approx(closed_form_single_crb(b)).epsilon(1e-14));
    const ComplexMatrix ra = 20.0 * ComplexMatrix::Identity(a.n_res, a.n_res);
    const ComplexMatrix rb = 20.0 * ComplexMatrix::Identity(b.n_res, b.n_res);
    const double ga = crb_values(fisher_matrix(a, ra)).crb_per_target[0];
    const double gb = crb_values(fisher_matrix(b, rb)).crb_per_target[0];
    CHECK(std::abs(ga - gb) <= 1e-9 * ga);
  }
}

TEST_CASE("endfire and invalid inputs") {
  SceneConfig s = single(90.0, 8, 4);
  const MeasurementMatrix d = build_measurement(MeasurementKind::Dft, 8, 8, std::uint64_t{0});
  const FisherMatrix f = fisher_matrix(s, d);
  CHECK(f.endfire);
  CHECK_THROWS_AS(crb_values(f), SingularityError);
  CHECK_THROWS_AS(closed_form_single_crb(s), EndfireError);
  CHECK_THROWS_AS(closed_form_single_crb(SceneConfig::desk_defaults()), ConfigError);
  CHECK_THROWS_AS(fisher_matrix(s, ComplexMatrix::Identity(5, 5)), DimensionError);
}

}
