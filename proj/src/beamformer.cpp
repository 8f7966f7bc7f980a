#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "riscom/beamformer.hpp"
#include "riscom/metrics.hpp"

namespace riscom {

ComplexMatrix RateProblem::sensing_matrix() const { return sense.adjoint() * sense; }

std::vector<ComplexMatrix> RateProblem::rate_matrices() const {
  std::vector<ComplexMatrix> q;
  q.reserve(rows.rows());
  for (Eigen::Index k = 0; k < rows.rows(); ++k) q.push_back(rows.row(k).adjoint() * rows.row(k));
  return q;
}

double RateProblem::rate(const ComplexMatrix& W) const { return sum_rate_rows(rows, W, sigma2); }

double RateProblem::gain(const ComplexMatrix& W) const {
  return (sense * W * sense.adjoint())(0, 0).real();
}

double RateProblem::gain(const ComplexVector& w) const { return std::norm(sense.dot(w.conjugate())); }

double RateProblem::rate(const ComplexVector& w) const {
  double r = 0.0;
  for (Eigen::Index k = 0; k < rows.rows(); ++k)
    r += std::log2(1.0 + std::norm((rows.row(k) * w)(0, 0)) / sigma2);
  return r;
}

RateProblem make_rate_problem(const ChannelRealization& ch, const PhaseConfig& phi, const ScenarioConfig& cfg,
                              const ComplexVector& steering) {
  RateProblem p;
  p.rows = cascaded_rows(ch, phi);
  p.sense = sensing_row(steering, phi, ch.H_bi);
  p.sigma2 = cfg.sigma2;
  p.P_max = cfg.P_max;
  p.gamma_th = cfg.gamma_th;
  return p;
}

RateProblem make_rate_problem(const ChannelRealization& ch, const PhaseConfig& phi, const ScenarioConfig& cfg) {
  return make_rate_problem(ch, phi, cfg,
                           steering_vector(target_direction_from_geometry(cfg), cfg.L_x, cfg.L_y));
}

TransmitCovariance default_initial_covariance(const RateProblem& p) {
  const int n = static_cast<int>(p.rows.cols());
  const double lam = p.sense.squaredNorm();
  const double bound = p.P_max * lam;
  if (p.gamma_th > 0.0 && bound < p.gamma_th)
    throw Infeasible("sensing threshold unreachable for this Phi", bound, p.gamma_th);
  TransmitCovariance init;
  if (lam <= 0.0) {
    init.W = ComplexMatrix::Identity(n, n) * (p.P_max / n);
    return init;
  }
  const ComplexVector v = p.sense.adjoint() / std::sqrt(lam);
  const double focus = p.gamma_th / lam;
  init.W = focus * (v * v.adjoint()) + ComplexMatrix::Identity(n, n) * ((p.P_max - focus) / n);
  return init;
}

namespace {

// d/dt of the sum rate along W + t D, with a_k = r_k W r_k^H, b_k = r_k D r_k^H.
double slope(const RealVector& a, const RealVector& b, double sigma2, double t) {
  double s = 0.0;
  for (Eigen::Index k = 0; k < a.size(); ++k) s += b[k] / (sigma2 + a[k] + t * b[k]);
  return s / std::log(2.0);
}

double line_search(const RealVector& a, const RealVector& b, double sigma2) {
  if (slope(a, b, sigma2, 1.0) >= 0.0) return 1.0;
  if (slope(a, b, sigma2, 0.0) <= 0.0) return 0.0;
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (slope(a, b, sigma2, mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

ScaResult beamform_sca(const RateProblem& p, const ScaOptions& opts, std::optional<TransmitCovariance> init) {
  const double bound = p.P_max * p.sense.squaredNorm();
  if (p.gamma_th > 0.0 && bound < p.gamma_th)
    throw Infeasible("sensing threshold unreachable for this Phi", bound, p.gamma_th);

  ScaResult res;
  res.W = init ? *init : default_initial_covariance(p);
  const auto Q = p.rate_matrices();
  SdpProblem sdp;
  sdp.A_sense = p.sensing_matrix();
  sdp.gamma_th = p.gamma_th;
  sdp.P_max = p.P_max;

  ComplexMatrix& W = res.W.W;
  double rate = p.rate(W);
  res.trace.push_back({0, rate, p.gain(W), W.trace().real(), 0.0, 0.0});

  for (int it = 1; it <= opts.max_inner; ++it) {
    sdp.C = sca_gradient(W, Q, p.sigma2);
    const SdpSolution s = solve_linear_sdp(sdp, opts.sdp);
    const ComplexMatrix D = s.W.W - W;
    const double gap = numerics::trace_product(sdp.C, D);

    const RealVector a = received_powers(p.rows, W);
    const RealVector b = received_powers(p.rows, D);
    double step = line_search(a, b, p.sigma2);
    ComplexMatrix next = numerics::hermitian_part(W + step * D);
    double next_rate = p.rate(next);
    if (next_rate < rate) {
      step = 0.0;
      next = W;
      next_rate = rate;
    }
    const double gain_step = next_rate - rate;
    W = next;
    rate = next_rate;
    res.inner_iters = it;
    res.trace.push_back({it, rate, p.gain(W), W.trace().real(), gap, step});
    if (gain_step <= opts.delta) {
      res.converged = true;
      break;
    }
  }
  res.rate = rate;
  return res;
}

ScaResult beamform_sca(const PhaseConfig& phi, const ChannelRealization& ch, const ScenarioConfig& cfg,
                       std::optional<TransmitCovariance> init) {
  ScaOptions opts;
  opts.delta = cfg.delta_sca;
  opts.max_inner = cfg.max_inner;
  return beamform_sca(make_rate_problem(ch, phi, cfg), opts, std::move(init));
}

void write_trace_csv(std::span<const ScaIterate> trace, std::ostream& out) {
  char buf[160];
  out << "iter,rate,gain,trace_W,gap\n";
  for (const auto& t : trace) {
    std::snprintf(buf, sizeof buf, "%d,%.10g,%.10g,%.10g,%.10g\n", t.iter, t.rate, t.gain, t.trace_W, t.gap);
    out << buf;
  }
}

ComplexVector extract_rank_one(const TransmitCovariance& cov, const RateProblem& p, int randomization_count,
                               std::uint64_t seed) {
  const auto eig = numerics::hermitian_eig(numerics::hermitian_part(cov.W));
  const int n = static_cast<int>(eig.values.size());
  const double lam1 = std::max(0.0, eig.values[0]);
  const ComplexVector v1 = eig.vectors.col(0);
  const double tol = 1e-9;

  ComplexVector best;
  double best_rate = -1.0;
  auto consider = [&](const ComplexVector& w) {
    if (p.gamma_th > 0.0 && p.gain(w) < p.gamma_th * (1.0 - tol)) return;
    if (w.squaredNorm() > p.P_max * (1.0 + tol)) return;
    const double r = p.rate(w);
    if (r > best_rate) {
      best_rate = r;
      best = w;
    }
  };

  ComplexVector w1 = std::sqrt(lam1) * v1;
  // lift a weak principal beam onto the threshold when power allows
  if (p.gamma_th > 0.0) {
    const double g = p.gain(w1);
    if (g > 0.0 && g < p.gamma_th && lam1 * p.gamma_th / g <= p.P_max) w1 *= std::sqrt(p.gamma_th / g);
  }
  consider(w1);

  if (randomization_count > 0) {
    consider(std::sqrt(p.P_max) * v1);
    ComplexMatrix root(n, n);
    for (int r = 0; r < n; ++r) root.col(r) = eig.vectors.col(r) * std::sqrt(std::max(0.0, eig.values[r]));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    ComplexVector z(n);
    for (int i = 0; i < randomization_count; ++i) {
      for (int j = 0; j < n; ++j) z[j] = cdouble(normal(rng), normal(rng));
      ComplexVector xi = root * z;
      const double nrm = xi.squaredNorm();
      if (nrm <= 0.0) continue;
      consider(xi * std::sqrt(p.P_max / nrm));
    }
  }
  if (best_rate < 0.0) throw NoFeasibleRankOne("no rank-one candidate meets the sensing threshold");
  return best;
}

}  // namespace riscom
