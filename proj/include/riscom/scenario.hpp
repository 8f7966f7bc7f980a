#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "riscom/numerics.hpp"

namespace riscom {

using Vec3 = Eigen::Vector3d;

/// All physical and algorithmic parameters of one simulated deployment.
/// Quantities are stored in SI units (W, Hz, m, linear ratios); the JSON
/// loader converts from the dBm / dB forms used in scenario files.
struct ScenarioConfig {
  int N = 8;    ///< BS antennas
  int K = 11;   ///< mobile relays
  int L_x = 8;  ///< RIS rows (along Z)
  int L_y = 8;  ///< RIS columns (along Y)
  int e = 3;    ///< phase quantization bits

  double f = 30e9;
  double B = 100e6;
  double P_max = 0.0;     ///< W
  double gamma_th = 0.0;  ///< W (files and CLI use mW)
  double sigma2 = 0.0;    ///< W
  double K_R = 4.0;
  double alpha1 = 2.5;
  double alpha2 = 3.6;
  double beta0 = 0.0;  ///< linear path gain at 1 m
  double antenna_spacing = 0.5;  ///< in wavelengths
  double direct_blockage = 1e-4;  ///< linear power factor on the BS->MR link

  Vec3 bs_pos = Vec3::Zero();
  Vec3 ris_pos = Vec3::Zero();
  std::vector<Vec3> mr_positions;
  Vec3 target_pos = Vec3::Zero();

  double delta_sca = 1e-4;
  double vartheta_phase = 1e-3;
  double theta_outer = 1e-3;
  int max_outer = 30;
  int max_inner = 100;
  int mc_drops = 50;

  int L() const noexcept { return L_x * L_y; }
  int phase_levels() const noexcept { return 1 << e; }

  /// Throws InvalidConfig naming the first violated invariant.
  void validate() const;
};

struct TargetDirection {
  double theta_a = 0.0;  ///< azimuth in the RIS frame, [-pi, pi)
  double theta_e = 0.0;  ///< polar angle from +Z, [0, pi]
};

double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);
double db_to_linear(double db);
double linear_to_db(double lin);

/// Noise power in W for a PSD given in dBm/MHz over bandwidth `bandwidth_hz`.
double noise_power_w(double psd_dbm_per_mhz, double bandwidth_hz);

/// Default system parameters and geometry: BS and MRs on
/// opposite sides of the track (Y axis), RIS at the head of the train so
/// MR index grows with RIS distance.
ScenarioConfig default_scenario();

/// Evenly spaced MR roof positions along +Y starting at `y0`.
std::vector<Vec3> train_positions(int count, double x, double y0, double length, double height);

/// a_y(theta_a, theta_e) (x) a_z(theta_e), unit norm, length L_x * L_y.
ComplexVector steering_vector(const TargetDirection& dir, int L_x, int L_y);

/// Direction of the RIS->target ray in the RIS frame (broadside +X,
/// columns along Y, rows along Z). Throws DegenerateGeometry.
TargetDirection target_direction_from_geometry(const ScenarioConfig& cfg);
TargetDirection direction_between(const Vec3& from, const Vec3& to);

}  // namespace riscom
