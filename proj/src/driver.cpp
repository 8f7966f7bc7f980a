#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <string>

#include "riscom/driver.hpp"
#include "riscom/metrics.hpp"
#include "riscom/phase_opt.hpp"

namespace riscom {

namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kPhaseTag = 0x5048;    // "PH"
constexpr std::uint64_t kExtractTag = 0x4558;  // "EX"

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

ScaOptions sca_options(const ScenarioConfig& cfg) {
  ScaOptions o;
  o.delta = cfg.delta_sca;
  o.max_inner = cfg.max_inner;
  return o;
}

// rank-one recovery plus per-user rates; leaves rate_extracted at 0 on failure
void finish(RunResult& r, const RateProblem& p, int randomizations) {
  r.user_rates = user_rates_rows(p.rows, r.W, p.sigma2);
  try {
    r.w = extract_rank_one(TransmitCovariance{r.W}, p, randomizations, mix(r.seed, kExtractTag));
    const ComplexMatrix ww = r.w * r.w.adjoint();
    r.user_rates_extracted = user_rates_rows(p.rows, ww, p.sigma2);
    r.rate_extracted = r.user_rates_extracted.sum();
  } catch (const NoFeasibleRankOne&) {
    r.rate_extracted = 0.0;
  }
}

void mark_infeasible(RunResult& r) {
  r.feasible = false;
  r.rate_relaxed = r.rate_extracted = 0.0;
  r.gain = 0.0;
  r.user_rates.resize(0);
  r.user_rates_extracted.resize(0);
}

}  // namespace

std::string_view scheme_name(Scheme s) {
  switch (s) {
    case Scheme::Proposed: return "proposed";
    case Scheme::WithoutRIS: return "without_ris";
    case Scheme::RPS: return "rps";
    case Scheme::APT: return "apt";
  }
  return "?";
}

Scheme parse_scheme(std::string_view s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  for (Scheme x : {Scheme::Proposed, Scheme::WithoutRIS, Scheme::RPS, Scheme::APT})
    if (lower == scheme_name(x)) return x;
  if (lower == "without-ris" || lower == "withoutris") return Scheme::WithoutRIS;
  throw InvalidConfig("unknown scheme '" + std::string(s) + "'");
}

PhaseDraws::PhaseDraws(const ScenarioConfig& cfg, std::uint64_t seed)
    : L_(cfg.L()), bits_(cfg.e), rng_(mix(seed, kPhaseTag)) {}

PhaseConfig PhaseDraws::next() { return PhaseConfig::random(L_, bits_, rng_); }

RunResult alternate(const ChannelRealization& ch, const ScenarioConfig& cfg, std::uint64_t seed,
                    const AlternateOptions& opts) {
  cfg.validate();
  Stopwatch clock;
  RunResult r;
  r.scheme = Scheme::Proposed;
  r.seed = seed;
  const ComplexVector a = steering_vector(target_direction_from_geometry(cfg), cfg.L_x, cfg.L_y);

  PhaseConfig phi;
  if (opts.initial_phase) {
    phi = *opts.initial_phase;
  } else {
    PhaseDraws draws(cfg, seed);
    bool ok = false;
    for (int i = 0; i < kMaxPhaseRedraws && !ok; ++i) {
      phi = draws.next();
      r.phase_redraws = i;
      ok = feasibility_bound(make_rate_problem(ch, phi, cfg, a).sensing_matrix(), cfg.P_max) >= cfg.gamma_th;
    }
    if (!ok) {
      r.phi = phi;
      mark_infeasible(r);
      r.wall_time = clock.seconds();
      return r;
    }
  }

  const double tol = std::min(cfg.vartheta_phase, cfg.theta_outer);
  const ScaOptions sopts = sca_options(cfg);
  LocalSearchOptions lopts;
  lopts.vartheta = cfg.vartheta_phase;
  lopts.max_sweeps = cfg.max_inner;

  std::optional<TransmitCovariance> W;
  double prev = 0.0;
  try {
    {
      const RateProblem p0 = make_rate_problem(ch, phi, cfg, a);
      prev = p0.rate(default_initial_covariance(p0).W);
    }
    for (int outer = 1; outer <= cfg.max_outer; ++outer) {
      const RateProblem p = make_rate_problem(ch, phi, cfg, a);
      ScaResult sca = beamform_sca(p, sopts, W);
      W = sca.W;
      r.inner_iters_total += sca.inner_iters;
      r.history.push_back(sca.rate);

      LocalSearchResult ls = local_search(*W, ch, cfg, phi, lopts);
      phi = ls.phi;
      r.phase_sweeps_total += ls.sweeps;
      r.history.push_back(ls.rate);
      r.outer_iters = outer;
      if (std::abs(ls.rate - prev) < tol) {
        r.converged = true;
        break;
      }
      prev = ls.rate;
    }
  } catch (const Infeasible&) {
    if (!W) {
      r.phi = phi;
      mark_infeasible(r);
      r.wall_time = clock.seconds();
      return r;
    }
    // cannot happen for a feasible incumbent; report it
  } catch (const NoConvergence&) {
    if (!W) throw;
  }

  const RateProblem p = make_rate_problem(ch, phi, cfg, a);
  r.phi = phi;
  r.W = W->W;
  r.rate_relaxed = p.rate(r.W);
  r.gain = p.gain(r.W);
  r.feasible = r.gain >= cfg.gamma_th * (1.0 - 1e-8);
  if (!r.feasible) {
    mark_infeasible(r);
  } else {
    finish(r, p, opts.randomizations);
  }
  r.wall_time = clock.seconds();
  return r;
}

RunResult run_without_ris(const ChannelRealization& ch, const ScenarioConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  Stopwatch clock;
  RunResult r;
  r.scheme = Scheme::WithoutRIS;
  r.seed = seed;
  RateProblem p;
  p.rows = ch.h_direct;
  p.sense = Eigen::RowVectorXcd::Zero(ch.h_direct.cols());
  p.sigma2 = cfg.sigma2;
  p.P_max = cfg.P_max;
  p.gamma_th = 0.0;
  const ScaResult sca = beamform_sca(p, sca_options(cfg));
  r.W = sca.W.W;
  r.rate_relaxed = sca.rate;
  r.inner_iters_total = sca.inner_iters;
  r.outer_iters = 1;
  r.converged = sca.converged;
  r.history.push_back(sca.rate);
  r.feasible = true;
  r.gain = 0.0;  // no reflected path towards the target
  finish(r, p, AlternateOptions{}.randomizations);
  r.wall_time = clock.seconds();
  return r;
}

RunResult run_rps(const ChannelRealization& ch, const ScenarioConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  Stopwatch clock;
  RunResult r;
  r.scheme = Scheme::RPS;
  r.seed = seed;
  PhaseDraws draws(cfg, seed);
  r.phi = draws.next();
  const RateProblem p = make_rate_problem(ch, r.phi, cfg);
  try {
    const ScaResult sca = beamform_sca(p, sca_options(cfg));
    r.W = sca.W.W;
    r.rate_relaxed = sca.rate;
    r.gain = p.gain(r.W);
    r.inner_iters_total = sca.inner_iters;
    r.outer_iters = 1;
    r.converged = sca.converged;
    r.history.push_back(sca.rate);
    r.feasible = true;
    finish(r, p, AlternateOptions{}.randomizations);
  } catch (const Infeasible&) {
    mark_infeasible(r);
  }
  r.wall_time = clock.seconds();
  return r;
}

RunResult run_apt(const ChannelRealization& ch, const ScenarioConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  Stopwatch clock;
  RunResult r;
  r.scheme = Scheme::APT;
  r.seed = seed;
  const ComplexVector a = steering_vector(target_direction_from_geometry(cfg), cfg.L_x, cfg.L_y);
  const double amp = std::sqrt(cfg.P_max / cfg.N);

  auto equal_power = [&](const PhaseConfig& phi) {
    const RateProblem p = make_rate_problem(ch, phi, cfg, a);
    ComplexMatrix S = ComplexMatrix::Zero(cfg.N, cfg.N);
    for (const auto& q : p.rate_matrices()) S += q;
    const ComplexVector v = numerics::dominant_eigenpair(numerics::hermitian_part(S)).second;
    ComplexVector w(cfg.N);
    for (int n = 0; n < cfg.N; ++n) w[n] = std::abs(v[n]) > 0.0 ? std::polar(amp, std::arg(v[n])) : cdouble(amp);
    return w;
  };

  PhaseDraws draws(cfg, seed);
  PhaseConfig phi;
  ComplexVector w;
  bool ok = false;
  for (int i = 0; i < kMaxPhaseRedraws && !ok; ++i) {
    phi = draws.next();
    r.phase_redraws = i;
    w = equal_power(phi);
    ok = make_rate_problem(ch, phi, cfg, a).gain(w) >= cfg.gamma_th;
  }
  if (!ok) {
    r.phi = phi;
    mark_infeasible(r);
    r.wall_time = clock.seconds();
    return r;
  }

  r.W = w * w.adjoint();
  const LocalSearchResult ls = local_search(TransmitCovariance{r.W}, ch, cfg, phi);
  r.phi = ls.phi;
  r.w = w;
  const RateProblem p = make_rate_problem(ch, r.phi, cfg, a);
  r.rate_relaxed = r.rate_extracted = p.rate(w);
  r.gain = p.gain(w);
  r.user_rates = r.user_rates_extracted = user_rates_rows(p.rows, r.W, p.sigma2);
  r.phase_sweeps_total = ls.sweeps;
  r.outer_iters = 1;
  r.converged = !ls.hit_cap;
  r.history.push_back(ls.rate);
  r.feasible = r.gain >= cfg.gamma_th * (1.0 - 1e-8);
  if (!r.feasible) mark_infeasible(r);
  r.wall_time = clock.seconds();
  return r;
}

RunResult run_scheme(Scheme s, const ChannelRealization& ch, const ScenarioConfig& cfg, std::uint64_t seed) {
  switch (s) {
    case Scheme::Proposed: return alternate(ch, cfg, seed);
    case Scheme::WithoutRIS: return run_without_ris(ch, cfg, seed);
    case Scheme::RPS: return run_rps(ch, cfg, seed);
    case Scheme::APT: return run_apt(ch, cfg, seed);
  }
  throw InvalidConfig("unknown scheme");
}

}  // namespace riscom
