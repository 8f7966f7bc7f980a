#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "riscom/phase_opt.hpp"
#include "riscom/simd/kernels.hpp"

namespace riscom {

PhaseEvaluator::PhaseEvaluator(const ComplexMatrix& W, const ChannelRealization& ch, const ComplexVector& steering,
                               double sigma2, const PhaseConfig& phi)
    : K_(static_cast<int>(ch.h_ir.rows())), L_(static_cast<int>(ch.h_ir.cols())), sigma2_(sigma2), phi_(phi) {
  if (static_cast<int>(phi.size()) != L_ || !phi.valid())
    throw InvalidConfig("PhaseEvaluator: phase configuration does not match the RIS");
  const auto eig = numerics::hermitian_eig(numerics::hermitian_part(W));
  // every nonnegative mode is kept so the incremental rate matches Tr(W Q_k)
  R_ = 0;
  for (Eigen::Index r = 0; r < eig.values.size(); ++r)
    if (eig.values[r] > 0.0) ++R_;
  lambda_.assign(eig.values.data(), eig.values.data() + R_);
  const ComplexMatrix HV = ch.H_bi * eig.vectors.leftCols(R_);  // L x R

  b_.resize(static_cast<std::size_t>(L_) * K_ * R_);
  t_.resize(static_cast<std::size_t>(L_) * R_);
  for (int l = 0; l < L_; ++l) {
    for (int k = 0; k < K_; ++k)
      for (int r = 0; r < R_; ++r) b_[(static_cast<std::size_t>(l) * K_ + k) * R_ + r] = ch.h_ir(k, l) * HV(l, r);
    for (int r = 0; r < R_; ++r) t_[static_cast<std::size_t>(l) * R_ + r] = std::conj(steering[l]) * HV(l, r);
  }
  s_.assign(static_cast<std::size_t>(K_) * R_, 0.0);
  g_.assign(R_, 0.0);
  s_pow_.resize(s_.size());
  g_pow_.resize(g_.size());
  refresh();
}

void PhaseEvaluator::refresh() {
  std::fill(s_.begin(), s_.end(), cdouble{});
  std::fill(g_.begin(), g_.end(), cdouble{});
  const auto& kern = simd::kernels();
  const int levels = phi_.levels();
  const int kr = K_ * R_;
  for (int l = 0; l < L_; ++l) {
    const cdouble z = phasor(phi_.m[l], levels);
    kern.axpy(z, b_.data() + static_cast<std::size_t>(l) * kr, s_.data(), kr);
    kern.axpy(z, t_.data() + static_cast<std::size_t>(l) * R_, g_.data(), R_);
  }
}

double PhaseEvaluator::rate_of(const std::vector<cdouble>& s) const {
  double rate = 0.0;
  for (int k = 0; k < K_; ++k) {
    double p = 0.0;
    for (int r = 0; r < R_; ++r) p += lambda_[r] * std::norm(s[static_cast<std::size_t>(k) * R_ + r]);
    rate += std::log2(1.0 + p / sigma2_);
  }
  return rate;
}

double PhaseEvaluator::gain_of(const std::vector<cdouble>& g) const {
  double v = 0.0;
  for (int r = 0; r < R_; ++r) v += lambda_[r] * std::norm(g[r]);
  return v;
}

double PhaseEvaluator::rate() const { return rate_of(s_); }
double PhaseEvaluator::gain() const { return gain_of(g_); }

void PhaseEvaluator::probe(int l, int level, double& rate, double& gain) {
  const int levels = phi_.levels();
  const cdouble d = phasor(level, levels) - phasor(phi_.m[l], levels);
  const int kr = K_ * R_;
  const auto& kern = simd::kernels();
  kern.axpy_abs2(s_.data(), b_.data() + static_cast<std::size_t>(l) * kr, d, s_pow_.data(), kr);
  kern.axpy_abs2(g_.data(), t_.data() + static_cast<std::size_t>(l) * R_, d, g_pow_.data(), R_);
  rate = 0.0;
  for (int k = 0; k < K_; ++k) {
    double p = 0.0;
    for (int r = 0; r < R_; ++r) p += lambda_[r] * s_pow_[static_cast<std::size_t>(k) * R_ + r];
    rate += std::log2(1.0 + p / sigma2_);
  }
  gain = 0.0;
  for (int r = 0; r < R_; ++r) gain += lambda_[r] * g_pow_[r];
}

void PhaseEvaluator::commit(int l, int level) {
  const int levels = phi_.levels();
  const cdouble d = phasor(level, levels) - phasor(phi_.m[l], levels);
  const int kr = K_ * R_;
  const auto& kern = simd::kernels();
  kern.axpy(d, b_.data() + static_cast<std::size_t>(l) * kr, s_.data(), kr);
  kern.axpy(d, t_.data() + static_cast<std::size_t>(l) * R_, g_.data(), R_);
  phi_.m[l] = level;
}

LocalSearchResult local_search(const TransmitCovariance& W, const ChannelRealization& ch, const ScenarioConfig& cfg,
                               const PhaseConfig& init, const LocalSearchOptions& opts) {
  const ComplexVector a = steering_vector(target_direction_from_geometry(cfg), cfg.L_x, cfg.L_y);
  PhaseEvaluator ev(W.W, ch, a, cfg.sigma2, init);
  // W from the beamformer often sits on the sensing boundary; the slack
  // keeps roundoff from evicting the incumbent
  const double gamma = cfg.gamma_th * (1.0 - 1e-9);
  const int levels = init.levels();

  LocalSearchResult res;
  double rate = ev.rate();
  for (;;) {
    ++res.sweeps;
    const double start = rate;
    for (int l = 0; l < static_cast<int>(init.size()); ++l) {
      int best = -1;
      double best_rate = -std::numeric_limits<double>::infinity();
      for (int v = 0; v < levels; ++v) {
        double r, g;
        ev.probe(l, v, r, g);
        if (g < gamma) continue;
        if (r > best_rate) {
          best_rate = r;
          best = v;
        }
      }
      if (best >= 0) {
        ev.commit(l, best);
        rate = best_rate;
      }
      if (opts.update_trace) opts.update_trace->push_back(rate);
    }
    ev.refresh();
    rate = ev.rate();
    if (rate - start <= opts.vartheta) break;
    if (res.sweeps >= opts.max_sweeps) {
      res.hit_cap = true;
      break;
    }
  }
  res.phi = ev.phase();
  res.rate = rate;
  res.gain = ev.gain();
  return res;
}

LocalSearchResult local_search(const TransmitCovariance& W, const ChannelRealization& ch, const ScenarioConfig& cfg,
                               const PhaseConfig& init) {
  LocalSearchOptions opts;
  opts.vartheta = cfg.vartheta_phase;
  opts.max_sweeps = cfg.max_inner;
  return local_search(W, ch, cfg, init, opts);
}

ExhaustiveResult exhaustive_search(const TransmitCovariance& W, const ChannelRealization& ch,
                                   const ScenarioConfig& cfg) {
  const int L = cfg.L();
  if (static_cast<long>(L) * cfg.e > 20)
    throw InstanceTooLarge("exhaustive_search: L*e = " + std::to_string(L * cfg.e) + " exceeds 20");
  const ComplexVector a = steering_vector(target_direction_from_geometry(cfg), cfg.L_x, cfg.L_y);
  PhaseEvaluator ev(W.W, ch, a, cfg.sigma2, PhaseConfig::zeros(L, cfg.e));
  const int levels = 1 << cfg.e;

  ExhaustiveResult best, best_any;
  best.rate = best_any.rate = -std::numeric_limits<double>::infinity();
  PhaseConfig cur = PhaseConfig::zeros(L, cfg.e);
  long count = 0;
  for (;;) {
    if (++count % 4096 == 0) ev.refresh();
    const double r = ev.rate(), g = ev.gain();
    if (g >= cfg.gamma_th * (1.0 - 1e-9) && r > best.rate) best = {cur, r, g, true};
    if (r > best_any.rate) best_any = {cur, r, g, false};
    // odometer, last element fastest
    int pos = L - 1;
    while (pos >= 0 && cur.m[pos] == levels - 1) {
      cur.m[pos] = 0;
      ev.commit(pos, 0);
      --pos;
    }
    if (pos < 0) break;
    ++cur.m[pos];
    ev.commit(pos, cur.m[pos]);
  }
  if (best.feasible) {
    // exact values for the winner
    PhaseEvaluator fin(W.W, ch, a, cfg.sigma2, best.phi);
    best.rate = fin.rate();
    best.gain = fin.gain();
    return best;
  }
  return best_any;
}

}  // namespace riscom
