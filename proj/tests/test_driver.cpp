#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "riscom/driver.hpp"
#include "riscom/oracles.hpp"

using namespace riscom;

namespace {

ScenarioConfig small(int L_x, int L_y, int bits, int K) {
  ScenarioConfig cfg = oracle::tiny_scenario(L_x, L_y, bits, K);
  cfg.mr_positions = train_positions(K, 5.0, 0.0, 20.0, 2.5);
  return cfg;
}

void check_invariants(const RunResult& r, const ScenarioConfig& cfg) {
  CHECK(r.rate_relaxed >= 0.0);
  CHECK(r.rate_extracted >= 0.0);
  if (!r.feasible) {
    CHECK(r.rate_relaxed == 0.0);
    CHECK(r.rate_extracted == 0.0);
    return;
  }
  if (r.scheme != Scheme::WithoutRIS) CHECK(r.gain >= cfg.gamma_th * (1 - 1e-8));
  CHECK(r.W.trace().real() <= cfg.P_max * (1 + 1e-8));
  CHECK(numerics::is_psd(r.W));
  CHECK(r.user_rates.sum() == doctest::Approx(r.rate_relaxed).epsilon(1e-12));
  for (std::size_t i = 1; i < r.history.size(); ++i) CHECK(r.history[i] >= r.history[i - 1] - 1e-9);
}

bool same_except_time(const RunResult& a, const RunResult& b) {
  return a.rate_relaxed == b.rate_relaxed && a.rate_extracted == b.rate_extracted && a.gain == b.gain &&
         a.feasible == b.feasible && a.outer_iters == b.outer_iters && a.inner_iters_total == b.inner_iters_total &&
         a.phase_sweeps_total == b.phase_sweeps_total && a.phi == b.phi && a.W == b.W && a.w == b.w &&
         a.history == b.history;
}

}  // namespace

TEST_CASE("scheme names round trip") {
  for (Scheme s : {Scheme::Proposed, Scheme::WithoutRIS, Scheme::RPS, Scheme::APT})
    CHECK(parse_scheme(scheme_name(s)) == s);
  CHECK(parse_scheme("APT") == Scheme::APT);
  CHECK_THROWS_AS(parse_scheme("best"), InvalidConfig);
}

TEST_CASE("one element, one user, no sensing: the two-case MRT closed form") {
  ScenarioConfig cfg = small(1, 1, 1, 1);
  cfg.gamma_th = 0.0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const ChannelRealization ch = gen_channels(cfg, s);
    double best = 0.0;
    for (int m : {0, 1}) {
      PhaseConfig p = PhaseConfig::zeros(1, 1);
      p.m[0] = m;
      const ComplexMatrix r = ch.h_ir * phase_matrix(p) * ch.H_bi;
      best = std::max(best, std::log2(1 + cfg.P_max * r.squaredNorm() / cfg.sigma2));
    }
    const RunResult r = alternate(ch, cfg, s);
    CHECK(r.rate_relaxed == doctest::Approx(best).epsilon(1e-5));
    CHECK(r.rate_extracted == doctest::Approx(best).epsilon(1e-5));
    check_invariants(r, cfg);
  }
}

TEST_CASE("zero channels converge at once with rate 0") {
  ScenarioConfig cfg = small(2, 2, 1, 2);
  cfg.gamma_th = 0.0;
  ChannelRealization ch;
  ch.H_bi = ComplexMatrix::Zero(4, cfg.N);
  ch.h_ir = ComplexMatrix::Zero(2, 4);
  ch.h_direct = ComplexMatrix::Zero(2, cfg.N);
  const RunResult r = alternate(ch, cfg, 1);
  CHECK(r.rate_relaxed == 0.0);
  CHECK(r.outer_iters == 1);
  CHECK(r.converged);
  CHECK(run_without_ris(ch, cfg, 1).rate_relaxed == 0.0);
}

TEST_CASE("an unreachable threshold makes every RIS scheme infeasible") {
  ScenarioConfig cfg = small(2, 2, 1, 2);
  cfg.gamma_th = 1.0;  // 1 W of echo: far above P_max lambda_max for any draw
  const ChannelRealization ch = gen_channels(cfg, 3);
  for (Scheme s : {Scheme::Proposed, Scheme::RPS, Scheme::APT}) {
    const RunResult r = run_scheme(s, ch, cfg, 3);
    CHECK(!r.feasible);
    CHECK(r.rate_relaxed == 0.0);
    CHECK(r.rate_extracted == 0.0);
  }
  const RunResult a = alternate(ch, cfg, 3);
  CHECK(a.phase_redraws == kMaxPhaseRedraws - 1);
  // the baseline has no sensing path and stays feasible
  CHECK(run_without_ris(ch, cfg, 3).feasible);
}

TEST_CASE("without RIS: MRT for one user, independent of the RIS") {
  ScenarioConfig cfg = small(2, 2, 1, 1);
  const ChannelRealization ch = gen_channels(cfg, 5);
  const RunResult r = run_without_ris(ch, cfg, 5);
  const double want = std::log2(1 + cfg.P_max * ch.h_direct.squaredNorm() / cfg.sigma2);
  CHECK(r.rate_relaxed == doctest::Approx(want).epsilon(1e-5));
  CHECK(r.rate_extracted == doctest::Approx(want).epsilon(1e-5));

  const ScenarioConfig base = default_scenario();
  const double r0 = run_without_ris(gen_channels(base, 9), base, 9).rate_relaxed;
  for (int lx : {2, 4, 6}) {
    ScenarioConfig c = base;
    c.L_x = lx;
    c.L_y = lx;
    CHECK(run_without_ris(gen_channels(c, 9), c, 9).rate_relaxed == r0);
  }
}

TEST_CASE("random phases are seed-deterministic") {
  const ScenarioConfig cfg = default_scenario();
  const ChannelRealization ch = gen_channels(cfg, 11);
  const RunResult a = run_rps(ch, cfg, 11), b = run_rps(ch, cfg, 11);
  CHECK(same_except_time(a, b));
  check_invariants(a, cfg);
  CHECK(run_rps(ch, cfg, 12).phi != a.phi);
}

TEST_CASE("equal-power transmission") {
  const ScenarioConfig cfg = default_scenario();
  for (std::uint64_t s = 0; s < 5; ++s) {
    const ChannelRealization ch = gen_channels(cfg, s);
    const RunResult r = run_apt(ch, cfg, s);
    check_invariants(r, cfg);
    if (!r.feasible) continue;
    CHECK(r.w.squaredNorm() == doctest::Approx(cfg.P_max).epsilon(1e-12));
    for (int n = 0; n < cfg.N; ++n) CHECK(std::norm(r.w[n]) == doctest::Approx(cfg.P_max / cfg.N).epsilon(1e-12));
    // the relaxation on the same phases does at least as well, up to the
    // linearisation gap SCA stopped at
    const RateProblem p = make_rate_problem(ch, r.phi, cfg);
    ScaOptions tight;
    tight.delta = 1e-9;
    CHECK(r.rate_extracted <= beamform_sca(p, tight).rate + 1e-6);
  }
  ScenarioConfig one = small(2, 2, 1, 2);
  one.N = 1;
  one.gamma_th = 0.0;
  const RunResult r = run_apt(gen_channels(one, 2), one, 2);
  REQUIRE(r.w.size() == 1);
  CHECK(std::norm(r.w[0]) == doctest::Approx(one.P_max));
}

TEST_CASE("alternation from the random-phase start never ends below it") {
  const ScenarioConfig cfg = default_scenario();
  int compared = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const ChannelRealization ch = gen_channels(cfg, s);
    const RunResult rps = run_rps(ch, cfg, s);
    if (!rps.feasible) continue;
    ++compared;
    AlternateOptions o;
    o.initial_phase = rps.phi;
    const RunResult alt = alternate(ch, cfg, s, o);
    CHECK(alt.rate_relaxed >= rps.rate_relaxed - 1e-9);
    check_invariants(alt, cfg);
  }
  CHECK(compared > 0);
}

TEST_CASE("run results are deterministic and well formed") {
  const ScenarioConfig cfg = default_scenario();
  for (std::uint64_t s = 20; s < 25; ++s) {
    const ChannelRealization ch = gen_channels(cfg, s);
    for (Scheme sc : {Scheme::Proposed, Scheme::WithoutRIS, Scheme::RPS, Scheme::APT}) {
      const RunResult a = run_scheme(sc, ch, cfg, s);
      CHECK(a.scheme == sc);
      CHECK(a.seed == s);
      check_invariants(a, cfg);
      CHECK(same_except_time(a, run_scheme(sc, ch, cfg, s)));
    }
  }
}
