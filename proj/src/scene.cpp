#include "irsdoa/scene.hpp"

#include <cmath>

#include <fmt/format.h>

#include "irsdoa/errors.hpp"

namespace irsdoa {

namespace {

using std::numbers::pi;

bool angle_in_range(double theta) { return theta > -pi / 2.0 && theta <= pi / 2.0; }

}  // namespace

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }
double dbsm_to_m2(double dbsm) { return std::pow(10.0, dbsm / 10.0); }
double m2_to_dbsm(double m2) { return 10.0 * std::log10(m2); }

void SceneConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError("scene: " + msg); };
  if (n_bs_antennas < 1) fail("n_bs_antennas must be >= 1");
  if (n_res < 1) fail("n_res must be >= 1");
  if (n_ses < 1) fail("n_ses must be >= 1");
  if (n_slots < 1) fail("n_slots must be >= 1");
  if (!(carrier_freq > 0.0)) fail("carrier frequency must be positive");
  if (!(tx_power > 0.0)) fail("transmit power must be positive");
  if (!(noise_power > 0.0)) fail("noise power must be positive");
  if (!(bs_irs_distance > 0.0)) fail("BS-IRS distance must be positive");
  if (!angle_in_range(bs_departure_angle)) fail("BS departure angle outside (-90, 90] deg");
  if (!angle_in_range(irs_arrival_angle)) fail("IRS arrival angle outside (-90, 90] deg");
  if (targets.empty()) fail("at least one target is required");
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const Target& t = targets[k];
    if (!angle_in_range(t.angle)) fail(fmt::format("target {} angle outside (-90, 90] deg", k));
    if (!(t.distance > 0.0)) fail(fmt::format("target {} distance must be positive", k));
    if (!(t.rcs > 0.0)) fail(fmt::format("target {} RCS must be positive", k));
  }
}

SceneConfig SceneConfig::desk_defaults() {
  SceneConfig s;
  s.tx_power = dbm_to_watts(20.0);
  s.noise_power = dbm_to_watts(-120.0);
  for (double deg : {-10.0, 10.0, 30.0}) {
    s.targets.push_back({deg_to_rad(deg), 5.0, dbsm_to_m2(10.0)});
  }
  return s;
}

std::string_view to_string(MeasurementKind kind) {
  return kind == MeasurementKind::Dft ? "dft" : "random_phase";
}

ComplexVector ula_steering(Eigen::Index n, double omega) {
  ComplexVector v(n);
  for (Eigen::Index m = 0; m < n; ++m) v(m) = std::polar(1.0, -static_cast<double>(m) * omega);
  return v;
}

ComplexVector steering_derivative(Eigen::Index n, double theta, double theta_ref) {
  const double omega = pi * (std::sin(theta) - std::sin(theta_ref));
  const double dw = pi * std::cos(theta);
  ComplexVector v(n);
  for (Eigen::Index m = 0; m < n; ++m) {
    const auto md = static_cast<double>(m);
    v(m) = Complex(0.0, -md * dw) * std::polar(1.0, -md * omega);
  }
  return v;
}

Complex path_gain_bs_irs(double distance, double wavelength) {
  return wavelength / (4.0 * pi * distance) * std::polar(1.0, -2.0 * pi * distance / wavelength);
}

Complex path_gain_target(double distance, double rcs, double wavelength) {
  const double mag = std::sqrt(wavelength * wavelength * rcs /
                               (64.0 * pi * pi * pi * std::pow(distance, 4)));
  return mag * std::polar(1.0, -4.0 * pi * distance / wavelength);
}

MeasurementMatrix build_measurement(MeasurementKind kind, int n_res, int n_slots, Rng& rng) {
  if (n_res < 1 || n_slots < 1) {
    throw DimensionError(
        fmt::format("build_measurement: need N, L >= 1, got N={} L={}", n_res, n_slots));
  }
  MeasurementMatrix out;
  out.kind = kind;
  out.d.resize(n_res, n_slots);
  if (kind == MeasurementKind::Dft) {
    for (int l = 0; l < n_slots; ++l) {
      const int col = l % n_res;
      for (int n = 0; n < n_res; ++n) {
        // Reduce n * col modulo N first so the phase argument stays small.
        const int k = (n * col) % n_res;
        out.d(n, l) = std::polar(1.0, -2.0 * pi * k / n_res);
      }
    }
  } else {
    for (int l = 0; l < n_slots; ++l) {
      for (int n = 0; n < n_res; ++n) out.d(n, l) = std::polar(1.0, rng.uniform(0.0, 2.0 * pi));
    }
  }
  return out;
}

MeasurementMatrix build_measurement(MeasurementKind kind, int n_res, int n_slots,
                                    std::uint64_t seed) {
  Rng rng(seed);
  MeasurementMatrix out = build_measurement(kind, n_res, n_slots, rng);
  out.seed = seed;
  return out;
}

ModelMatrices model_matrices(const SceneConfig& scene) {
  scene.validate();
  const auto k_count = static_cast<Eigen::Index>(scene.n_targets());
  const double lambda_c = scene.wavelength();
  const Complex alpha_g = path_gain_bs_irs(scene.bs_irs_distance, lambda_c);
  // The BS beamformer a_b(departure) / sqrt(N_b) contributes a_b^H a_b / sqrt(N_b).
  const double bf_gain = std::sqrt(static_cast<double>(scene.n_bs_antennas) * scene.tx_power);

  ModelMatrices mm;
  mm.b.resize(scene.n_ses, k_count);
  mm.bdot.resize(scene.n_ses, k_count);
  mm.q.resize(scene.n_res, k_count);
  mm.qdot.resize(scene.n_res, k_count);
  mm.lambda.resize(k_count);
  for (Eigen::Index k = 0; k < k_count; ++k) {
    const Target& t = scene.targets[static_cast<std::size_t>(k)];
    mm.b.col(k) = ula_steering(scene.n_ses, se_frequency(t.angle));
    mm.bdot.col(k) = steering_derivative(scene.n_ses, t.angle, 0.0);
    mm.q.col(k) = ula_steering(scene.n_res, re_frequency(t.angle, scene.irs_arrival_angle));
    mm.qdot.col(k) = steering_derivative(scene.n_res, t.angle, scene.irs_arrival_angle);
    mm.lambda(k) = bf_gain * alpha_g * path_gain_target(t.distance, t.rcs, lambda_c);
  }
  return mm;
}

ComplexMatrix noiseless_echo(const SceneConfig& scene, const MeasurementMatrix& d) {
  if (d.d.rows() != scene.n_res || d.d.cols() != scene.n_slots) {
    throw DimensionError(fmt::format("measurement matrix is {}x{}, scene expects {}x{}",
                                     d.d.rows(), d.d.cols(), scene.n_res, scene.n_slots));
  }
  const ModelMatrices mm = model_matrices(scene);
  return mm.b * mm.lambda.asDiagonal() * (mm.q.adjoint() * d.d);
}

EchoData synthesize_echo(const SceneConfig& scene, const MeasurementMatrix& d, Rng& rng,
                         bool noiseless) {
  EchoData out;
  out.y = noiseless_echo(scene, d);
  out.noiseless = noiseless;
  if (!noiseless) {
    for (Eigen::Index l = 0; l < out.y.cols(); ++l) {
      for (Eigen::Index m = 0; m < out.y.rows(); ++m) {
        out.y(m, l) += rng.circular_gaussian(scene.noise_power);
      }
    }
  }
  return out;
}

EchoData synthesize_echo(const SceneConfig& scene, const MeasurementMatrix& d,
                         std::uint64_t noise_seed, bool noiseless) {
  Rng rng(noise_seed);
  EchoData out = synthesize_echo(scene, d, rng, noiseless);
  out.noise_seed = noise_seed;
  return out;
}

}  // namespace irsdoa
