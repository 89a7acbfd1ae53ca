#pragma once

#include <cstdint>
#include <numbers>
#include <string_view>
#include <vector>

#include "irsdoa/numerics.hpp"
#include "irsdoa/random.hpp"

namespace irsdoa {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

// Unit conversions at the configuration boundary. Everything past the
// config layer is SI: watts, meters, radians, m^2.
inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }
double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);
double dbsm_to_m2(double dbsm);
double m2_to_dbsm(double m2);

struct Target {
  double angle = 0.0;     // rad
  double distance = 5.0;  // m
  double rcs = 10.0;      // m^2
};

/// Geometry and radio link of a BS, a semi-passive IRS with N reflecting and
/// M sensing elements, and K point targets.
struct SceneConfig {
  int n_bs_antennas = 64;
  int n_res = 32;    // N, reflecting elements
  int n_ses = 8;     // M, sensing elements
  int n_slots = 32;  // L
  double carrier_freq = 28e9;                   // Hz
  double tx_power = 0.1;                        // W
  double noise_power = 1e-15;                   // W
  double bs_irs_distance = 30.0;                // m
  double bs_departure_angle = -std::numbers::pi / 3.0;  // rad
  double irs_arrival_angle = -std::numbers::pi / 3.0;   // rad
  std::vector<Target> targets;

  double wavelength() const { return kSpeedOfLight / carrier_freq; }
  std::size_t n_targets() const { return targets.size(); }

  /// Throws ConfigError on the first violated invariant.
  void validate() const;

  /// Desk-scale version of the reference scenario: N = 32, M = 8, L = 32,
  /// N_b = 64, 28 GHz, P_t = 20 dBm, sigma^2 = -120 dBm, d_BI = 30 m,
  /// BS departure / IRS arrival -60 deg, targets at -10, 10, 30 deg, 5 m,
  /// 10 dBsm.
  static SceneConfig desk_defaults();
};

enum class MeasurementKind { Dft, RandomPhase };

std::string_view to_string(MeasurementKind kind);

/// The N x L IRS reflection schedule with s(t) = 1 folded in.
struct MeasurementMatrix {
  MeasurementKind kind = MeasurementKind::Dft;
  ComplexMatrix d;
  std::uint64_t seed = 0;
};

/// Received M x L echo matrix.
struct EchoData {
  ComplexMatrix y;
  std::uint64_t noise_seed = 0;
  bool noiseless = false;
};

/// Factors of the noiseless echo B diag(lambda) Q^H D and their angle
/// derivatives.
struct ModelMatrices {
  ComplexMatrix b;       // M x K, SE steering vectors
  ComplexMatrix q;       // N x K, RE steering vectors at pi (sin th - sin th_BI)
  ComplexVector lambda;  // K, sqrt(N_b P_t) alpha_g alpha_k
  ComplexMatrix bdot;    // M x K
  ComplexMatrix qdot;    // N x K
};

/// Entry m is exp(-j m omega). Any real omega is accepted.
ComplexVector ula_steering(Eigen::Index n, double omega);

/// d/dtheta of ula_steering(n, pi (sin theta - sin theta_ref)).
ComplexVector steering_derivative(Eigen::Index n, double theta, double theta_ref = 0.0);

/// SE-side and RE-side spatial frequencies of a physical angle.
inline double se_frequency(double theta) { return std::numbers::pi * std::sin(theta); }
inline double re_frequency(double theta, double irs_arrival_angle) {
  return std::numbers::pi * (std::sin(theta) - std::sin(irs_arrival_angle));
}

Complex path_gain_bs_irs(double distance, double wavelength);
Complex path_gain_target(double distance, double rcs, double wavelength);

/// DFT: D(n, l) = exp(-j 2 pi n (l mod N) / N). RandomPhase: i.i.d. phases
/// uniform on [0, 2 pi) drawn from `rng`.
MeasurementMatrix build_measurement(MeasurementKind kind, int n_res, int n_slots, Rng& rng);
MeasurementMatrix build_measurement(MeasurementKind kind, int n_res, int n_slots,
                                    std::uint64_t seed);

ModelMatrices model_matrices(const SceneConfig& scene);

/// B Lambda Q^H D, the noiseless part of the echo.
ComplexMatrix noiseless_echo(const SceneConfig& scene, const MeasurementMatrix& d);

/// Y = B Lambda Q^H D + noise, noise i.i.d. CN(0, sigma^2) from `rng`.
EchoData synthesize_echo(const SceneConfig& scene, const MeasurementMatrix& d, Rng& rng,
                         bool noiseless = false);
EchoData synthesize_echo(const SceneConfig& scene, const MeasurementMatrix& d,
                         std::uint64_t noise_seed, bool noiseless = false);

}  // namespace irsdoa
