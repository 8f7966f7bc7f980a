#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "riscom/numerics.hpp"
#include "riscom/scenario.hpp"
#include "riscom/scenario_io.hpp"

using namespace riscom;
using std::numbers::pi;

TEST_CASE("default scenario carries the published parameters") {
  const ScenarioConfig c = default_scenario();
  CHECK(c.N == 8);
  CHECK(c.K == 11);
  CHECK(c.L() == 64);
  CHECK(c.L_x == 8);
  CHECK(c.e == 3);
  CHECK(c.f == 30e9);
  CHECK(c.B == 100e6);
  CHECK(c.K_R == 4.0);
  CHECK(c.alpha1 == 2.5);
  CHECK(c.alpha2 == 3.6);
  CHECK(c.beta0 == doctest::Approx(std::pow(10.0, -61.3849 / 10.0)).epsilon(1e-14));
  CHECK(c.P_max == doctest::Approx(std::pow(10.0, 2.3 - 3.0)).epsilon(1e-14));
  // -134 dBm/MHz over 100 MHz
  CHECK(c.sigma2 == doctest::Approx(std::pow(10.0, (-134.0 + 20.0) / 10.0 - 3.0)).epsilon(1e-12));
  CHECK(c.gamma_th == doctest::Approx(0.5e-4 * 1e-3));
  CHECK(c.mr_positions.size() == 11u);
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("train positions are evenly spaced over the given length") {
  const auto p = train_positions(11, 5.0, 0.0, 200.0, 2.5);
  REQUIRE(p.size() == 11u);
  for (std::size_t k = 1; k < p.size(); ++k) CHECK((p[k] - p[k - 1]).norm() == doctest::Approx(20.0));
  CHECK(p.back().y() == doctest::Approx(200.0));
  // MR index grows with distance from the RIS
  const ScenarioConfig c = default_scenario();
  for (int k = 1; k < c.K; ++k)
    CHECK((c.mr_positions[k] - c.ris_pos).norm() > (c.mr_positions[k - 1] - c.ris_pos).norm());
}

TEST_CASE("validate rejects broken configurations") {
  auto broken = [](auto mutate) {
    ScenarioConfig c = default_scenario();
    mutate(c);
    return c;
  };
  CHECK_THROWS_AS(broken([](ScenarioConfig& c) { c.N = 0; }).validate(), InvalidConfig);
  CHECK_THROWS_AS(broken([](ScenarioConfig& c) { c.L_x = 0; }).validate(), InvalidConfig);
  CHECK_THROWS_AS(broken([](ScenarioConfig& c) { c.e = 0; }).validate(), InvalidConfig);
  CHECK_THROWS_AS(broken([](ScenarioConfig& c) { c.P_max = 0; }).validate(), InvalidConfig);
  CHECK_THROWS_AS(broken([](ScenarioConfig& c) { c.gamma_th = -1; }).validate(), InvalidConfig);
  CHECK_THROWS_AS(broken([](ScenarioConfig& c) { c.sigma2 = 0; }).validate(), InvalidConfig);
  CHECK_THROWS_AS(broken([](ScenarioConfig& c) { c.K_R = -1; }).validate(), InvalidConfig);
  CHECK_THROWS_AS(broken([](ScenarioConfig& c) { c.delta_sca = 0; }).validate(), InvalidConfig);
  CHECK_THROWS_AS(broken([](ScenarioConfig& c) { c.max_inner = 0; }).validate(), InvalidConfig);
  CHECK_THROWS_AS(broken([](ScenarioConfig& c) { c.mr_positions.pop_back(); }).validate(), InvalidConfig);
}

TEST_CASE("steering vector: zero-phase column factor at theta_e = pi/2") {
  const ComplexVector a = steering_vector({0.7, pi / 2}, 4, 1);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(a[i] - cdouble(0.5)) < 1e-15);
}

TEST_CASE("steering vector: 2x2 hand-evaluated case") {
  const ComplexVector a = steering_vector({pi / 2, 0.0}, 2, 2);
  const double want[4] = {0.5, -0.5, -0.5, 0.5};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(a[i] - cdouble(want[i])) < 1e-14);
}

TEST_CASE("steering vectors are unit norm and equal kron(a_y, a_z)") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> az(-pi, pi), el(0.0, pi);
  std::uniform_int_distribution<int> dim(1, 16);
  for (int rep = 0; rep < 1000; ++rep) {
    const TargetDirection d{az(rng), el(rng)};
    const int lx = dim(rng), ly = dim(rng);
    const ComplexVector a = steering_vector(d, lx, ly);
    CHECK(std::abs(a.norm() - 1.0) <= 1e-12);
    if (rep % 50 == 0) {
      ComplexMatrix ay(ly, 1), azv(lx, 1);
      for (int m = 0; m < ly; ++m)
        ay(m, 0) = std::exp(cdouble(0, pi * m * std::sin(d.theta_a) * std::cos(d.theta_e))) / std::sqrt(double(ly));
      for (int n = 0; n < lx; ++n) azv(n, 0) = std::exp(cdouble(0, pi * n * std::cos(d.theta_e))) / std::sqrt(double(lx));
      CHECK((numerics::kron(ay, azv).col(0) - a).norm() < 1e-12);
    }
  }
}

TEST_CASE("target direction: broadside, zenith and degenerate") {
  ScenarioConfig c = default_scenario();
  c.target_pos = c.ris_pos + Vec3(10, 0, 0);
  auto d = target_direction_from_geometry(c);
  CHECK(d.theta_a == doctest::Approx(0.0));
  CHECK(d.theta_e == doctest::Approx(pi / 2));

  c.target_pos = c.ris_pos + Vec3(0, 0, 3);
  CHECK(target_direction_from_geometry(c).theta_e == doctest::Approx(0.0));

  c.target_pos = c.ris_pos;
  CHECK_THROWS_AS(target_direction_from_geometry(c), DegenerateGeometry);
}

TEST_CASE("target direction at the first MR matches explicit trigonometry") {
  ScenarioConfig c = default_scenario();
  c.target_pos = c.mr_positions[0];
  const Vec3 v = c.target_pos - c.ris_pos;
  // polar angle from the horizontal range, azimuth from the in-plane sine
  const double horiz = std::hypot(v.x(), v.y());
  const double theta_e = std::atan2(horiz, v.z());
  const double theta_a = std::asin(v.y() / horiz);  // v.x() > 0 here
  const auto d = target_direction_from_geometry(c);
  CHECK(d.theta_e == doctest::Approx(theta_e).epsilon(1e-12));
  CHECK(d.theta_a == doctest::Approx(theta_a).epsilon(1e-12));
  CHECK(d.theta_a >= -pi);
  CHECK(d.theta_a < pi);
}

TEST_CASE("scenario JSON round trip and overrides") {
  const ScenarioConfig c = default_scenario();
  const ScenarioConfig r = scenario_from_json(scenario_to_json(c));
  CHECK(r.P_max == doctest::Approx(c.P_max).epsilon(1e-12));
  CHECK(r.sigma2 == doctest::Approx(c.sigma2).epsilon(1e-12));
  CHECK(r.beta0 == doctest::Approx(c.beta0).epsilon(1e-12));
  CHECK(r.gamma_th == doctest::Approx(c.gamma_th).epsilon(1e-12));
  CHECK(r.direct_blockage == doctest::Approx(c.direct_blockage).epsilon(1e-12));
  CHECK((r.bs_pos - c.bs_pos).norm() < 1e-12);
  CHECK(r.mr_positions.size() == c.mr_positions.size());

  const ScenarioConfig o = scenario_from_json(R"({"P_max": 30, "gamma_th": 1e-4, "e": 2})");
  CHECK(o.P_max == doctest::Approx(1.0));
  CHECK(o.gamma_th == doctest::Approx(1e-7));
  CHECK(o.e == 2);
  CHECK(o.N == c.N);

  // a wider band raises the noise power with the PSD fixed
  const ScenarioConfig w = scenario_from_json(R"({"B": 200e6})");
  CHECK(w.sigma2 == doctest::Approx(2 * c.sigma2).epsilon(1e-12));

  const ScenarioConfig k = scenario_from_json(R"({"K": 3})");
  CHECK(k.mr_positions.size() == 3u);

  CHECK_THROWS_AS(scenario_from_json(R"({"P_maxx": 30})"), InvalidConfig);
  CHECK_THROWS_AS(scenario_from_json(R"({"N": 0})"), InvalidConfig);
  CHECK_THROWS_AS(scenario_from_json(R"({"bs_pos": [1, 2]})"), InvalidConfig);
  CHECK_THROWS_AS(scenario_from_json("[1, 2]"), InvalidConfig);
  CHECK_THROWS_AS(scenario_from_json("{"), InvalidConfig);
  CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), IoError);
}
