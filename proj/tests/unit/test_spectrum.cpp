#include <doctest.h>

#include <cmath>
#include <numbers>

#include "irsdoa/errors.hpp"
#include "irsdoa/spectrum.hpp"

using namespace irsdoa;
using std::numbers::pi;

namespace {

Spectrum from_values(std::vector<double> values) {
  Spectrum s;
  for (std::size_t i = 0; i < values.size(); ++i) s.grid.push_back(-1.0 + 0.01 * static_cast<double>(i));
  s.values = std::move(values);
  return s;
}

}  // namespace

TEST_SUITE("spectrum") {

TEST_CASE("angle grid") {
  const double step = deg_to_rad(0.02);
  const std::vector<double> g = angle_grid(step);
  CHECK(g.size() == 9000);
  CHECK(g.back() == doctest::Approx(pi / 2));
  CHECK(g.front() > -pi / 2);
  CHECK(g.front() - step <= -pi / 2 + 1e-9);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
  CHECK(angle_grid(0.1).back() == doctest::Approx(pi / 2));
  CHECK_THROWS_AS(angle_grid(0.0), ConfigError);
  CHECK_THROWS_AS(angle_grid(0.2), ConfigError);
}

TEST_CASE("dual spectrum of a single atom") {
  const ArrayGeometry geom{6, 10, deg_to_rad(-60.0)};
  const double th = deg_to_rad(25.0);
  const ComplexVector b = ula_steering(6, pi * std::sin(th));
  const ComplexVector a = ula_steering(10, pi * (std::sin(th) - std::sin(geom.irs_arrival_angle)));
  const ComplexMatrix g = b * a.adjoint();
  const double step = deg_to_rad(0.5);
  const Spectrum f = dual_spectrum(g, geom, step);
  CHECK(f.grid.size() == f.values.size());
  std::size_t idx = 0;
  for (std::size_t i = 0; i < f.grid.size(); ++i)
    if (std::abs(f.grid[i] - th) < std::abs(f.grid[idx] - th)) idx = i;
  CHECK(f.values[idx] == doctest::Approx(60.0));
  for (double v : f.values) CHECK(v <= 60.0 + 1e-9);

  const Spectrum z = dual_spectrum(ComplexMatrix::Zero(6, 10), geom, step);
  for (double v : z.values) CHECK(v == 0.0);
}

TEST_CASE("dual spectrum rejects wrong shape") {
  CHECK_THROWS_AS(dual_spectrum(ComplexMatrix::Zero(3, 4), ArrayGeometry{4, 4, 0.0}, 0.01),
                  DimensionError);
}

TEST_CASE("single peak") {
  const Spectrum s = from_values({0, 1, 3, 1, 0});
  const DoaEstimate raw = pick_peaks(s, 1, false);
  REQUIRE(raw.angles.size() == 1);
  CHECK(raw.angles[0] == s.grid[2]);
  CHECK(raw.peak_values[0] == 3.0);
  CHECK_FALSE(raw.degraded);
  // Symmetric neighbours: the vertex is the sample itself.
  CHECK(pick_peaks(s, 1, true).angles[0] == doctest::Approx(s.grid[2]));
}

TEST_CASE("parabolic refinement finds the vertex") {
  // Samples of -(x - x0)^2 on the grid; the vertex is recovered exactly.
  const double x0 = -0.9637;
  std::vector<double> v;
  for (int i = 0; i < 9; ++i) {
    const double x = -1.0 + 0.01 * i;
    v.push_back(5.0 - (x - x0) * (x - x0) * 1e3);
  }
  const DoaEstimate e = pick_peaks(from_values(v), 1, true);
  CHECK(e.angles[0] == doctest::Approx(x0).epsilon(1e-12));
}

TEST_CASE("equal twin peaks: smaller angle wins") {
  const Spectrum s = from_values({0, 2, 0, 0, 2, 0});
  const DoaEstimate e = pick_peaks(s, 1, false);
  CHECK(e.angles[0] == s.grid[1]);
}

TEST_CASE("K largest peaks returned in ascending angle order") {
  const Spectrum s = from_values({0, 5, 0, 1, 0, 7, 0, 3, 0});
  const DoaEstimate e = pick_peaks(s, 2, false);
  REQUIRE(e.angles.size() == 2);
  CHECK(e.angles[0] == s.grid[1]);
  CHECK(e.angles[1] == s.grid[5]);
  CHECK(e.peak_values[0] == 5.0);
  CHECK(e.peak_values[1] == 7.0);
  for (std::size_t i = 1; i < e.angles.size(); ++i) CHECK(e.angles[i] > e.angles[i - 1]);
}

TEST_CASE("too few maxima fills and flags degraded") {
  const Spectrum s = from_values({0, 1, 4, 2, 1.5, 0.5});
  const DoaEstimate e = pick_peaks(s, 2, true);
  REQUIRE(e.angles.size() == 2);
  CHECK(e.degraded);
  // Filler is the largest remaining sample, index 3.
  CHECK(e.angles[1] == s.grid[3]);

  const Spectrum flat = from_values({1, 1, 1, 1});
  const DoaEstimate f = pick_peaks(flat, 1, true);
  CHECK(f.degraded);
  CHECK(f.angles.size() == 1);
}

TEST_CASE("plateau is not a strict maximum") {
  const DoaEstimate e = pick_peaks(from_values({0, 2, 2, 0, 1, 0}), 1, false);
  CHECK(e.peak_values[0] == 1.0);
}

TEST_CASE("peak picking input errors") {
  CHECK_THROWS(pick_peaks(from_values({0, 1, 0}), 0, true));
  CHECK_THROWS(pick_peaks(from_values({0, 1}), 1, true));
}

}
