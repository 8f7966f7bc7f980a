#include "riscom/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace riscom {

double dbm_to_watt(double dbm) { return std::pow(10.0, dbm / 10.0 - 3.0); }
double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

double noise_power_w(double psd_dbm_per_mhz, double bandwidth_hz) {
  return dbm_to_watt(psd_dbm_per_mhz + 10.0 * std::log10(bandwidth_hz / 1e6));
}

void ScenarioConfig::validate() const {
  auto fail = [](const std::string& what) { throw InvalidConfig("invalid scenario: " + what); };
  if (N < 1) fail("N must be >= 1");
  if (K < 1) fail("K must be >= 1");
  if (L_x < 1 || L_y < 1) fail("L_x and L_y must be >= 1");
  if (e < 1 || e > 16) fail("e must be in [1, 16]");
  if (!(P_max > 0.0)) fail("P_max must be > 0");
  if (!(gamma_th >= 0.0)) fail("gamma_th must be >= 0");
  if (!(sigma2 > 0.0)) fail("sigma2 must be > 0");
  if (!(K_R >= 0.0)) fail("K_R must be >= 0");
  if (!(beta0 > 0.0)) fail("beta0 must be > 0");
  if (!(direct_blockage >= 0.0)) fail("direct_blockage must be >= 0");
  if (!(delta_sca > 0.0) || !(vartheta_phase > 0.0) || !(theta_outer > 0.0)) {
    fail("convergence thresholds must be > 0");
  }
  if (max_outer < 1 || max_inner < 1) fail("iteration caps must be >= 1");
  if (mc_drops < 1) fail("mc_drops must be >= 1");
  if (static_cast<int>(mr_positions.size()) != K) {
    fail("mr_positions has " + std::to_string(mr_positions.size()) + " entries, K = " +
         std::to_string(K));
  }
}

std::vector<Vec3> train_positions(int count, double x, double y0, double length, double height) {
  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(count));
  const double step = count > 1 ? length / (count - 1) : 0.0;
  for (int k = 0; k < count; ++k) out.emplace_back(x, y0 + step * k, height);
  return out;
}

ScenarioConfig default_scenario() {
  ScenarioConfig cfg;
  cfg.P_max = dbm_to_watt(23.0);
  cfg.gamma_th = 0.5e-4 * 1e-3;  // 0.5e-4 mW
  cfg.sigma2 = noise_power_w(-134.0, cfg.B);
  cfg.beta0 = db_to_linear(-61.3849);
  cfg.direct_blockage = db_to_linear(-40.0);

  constexpr double h_bs = 5.0;
  constexpr double h_mr = 2.5;
  constexpr double h_ris = 2.5;
  cfg.bs_pos = Vec3(-1.5, 0.0, h_bs);
  cfg.ris_pos = Vec3(0.0, 0.0, h_ris);
  cfg.mr_positions = train_positions(cfg.K, 5.0, 0.0, 200.0, h_mr);
  cfg.target_pos = Vec3(7.0, 100.0, h_mr);
  return cfg;
}

ComplexVector steering_vector(const TargetDirection& dir, int L_x, int L_y) {
  using std::numbers::pi;
  const double cos_e = std::cos(dir.theta_e);
  const double phase_y = pi * std::sin(dir.theta_a) * cos_e;
  const double phase_z = pi * cos_e;
  ComplexVector a_y(L_y), a_z(L_x);
  for (int m = 0; m < L_y; ++m) a_y(m) = std::polar(1.0 / std::sqrt(double(L_y)), phase_y * m);
  for (int n = 0; n < L_x; ++n) a_z(n) = std::polar(1.0 / std::sqrt(double(L_x)), phase_z * n);

  ComplexVector out(L_x * L_y);
  for (int m = 0; m < L_y; ++m) {
    for (int n = 0; n < L_x; ++n) out(m * L_x + n) = a_y(m) * a_z(n);
  }
  return out;
}

TargetDirection direction_between(const Vec3& from, const Vec3& to) {
  const Vec3 d = to - from;
  const double r = d.norm();
  if (!(r > 1e-9)) throw DegenerateGeometry("target coincides with the RIS");
  TargetDirection dir;
  dir.theta_e = std::acos(std::clamp(d.z() / r, -1.0, 1.0));
  double az = std::atan2(d.y(), d.x());
  if (az >= std::numbers::pi) az -= 2.0 * std::numbers::pi;
  dir.theta_a = (d.x() == 0.0 && d.y() == 0.0) ? 0.0 : az;
  return dir;
}

TargetDirection target_direction_from_geometry(const ScenarioConfig& cfg) {
  return direction_between(cfg.ris_pos, cfg.target_pos);
}

}  // namespace riscom
