#include "riscom/channel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <random>

namespace riscom {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t element_key(std::uint64_t seed, Link link, int row, int col) {
  std::uint64_t k = splitmix64(seed);
  k = splitmix64(k ^ (static_cast<std::uint64_t>(link) << 48));
  k = splitmix64(k ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(row)));
  k = splitmix64(k ^ (static_cast<std::uint64_t>(static_cast<std::uint32_t>(col)) << 32));
  return k;
}

// 53-bit uniform on [0, 1).
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

ElementSample sample_element(std::uint64_t seed, Link link, int row, int col) {
  std::mt19937_64 rng(element_key(seed, link, row, col));
  ElementSample s;
  s.psi = 2.0 * std::numbers::pi * unit_uniform(rng);
  // Box-Muller, variance 1/2 per component.
  const double u1 = 1.0 - unit_uniform(rng);  // (0, 1]
  const double u2 = unit_uniform(rng);
  const double r = std::sqrt(-std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  s.nlos = cdouble(r * std::cos(t), r * std::sin(t));
  return s;
}

PathGains path_gains(const ScenarioConfig& cfg, double distance) {
  const double d = std::max(distance, 1.0);
  return {std::sqrt(cfg.beta0 * std::pow(d, -cfg.alpha1)),
          std::sqrt(cfg.beta0 * std::pow(d, -cfg.alpha2))};
}

double rician_mean_power(const ScenarioConfig& cfg, double distance) {
  const PathGains g = path_gains(cfg, distance);
  const double kr = cfg.K_R;
  return (kr * g.los_amplitude * g.los_amplitude + g.nlos_amplitude * g.nlos_amplitude) / (kr + 1.0);
}

cdouble rician_coefficient(const ScenarioConfig& cfg, const PathGains& g, const ElementSample& s) {
  const double kr = cfg.K_R;
  const cdouble los = std::polar(g.los_amplitude, -s.psi);
  const cdouble nlos = g.nlos_amplitude * s.nlos;
  return std::sqrt(kr / (kr + 1.0)) * los + std::sqrt(1.0 / (kr + 1.0)) * nlos;
}

ChannelRealization gen_channels(const ScenarioConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  const int L = cfg.L(), N = cfg.N, K = cfg.K;
  ChannelRealization ch;
  ch.seed = seed;
  ch.H_bi.resize(L, N);
  ch.h_ir.resize(K, L);
  ch.h_direct.resize(K, N);

  const PathGains g_bi = path_gains(cfg, (cfg.ris_pos - cfg.bs_pos).norm());
  for (int l = 0; l < L; ++l) {
    for (int n = 0; n < N; ++n) {
      ch.H_bi(l, n) = rician_coefficient(cfg, g_bi, sample_element(seed, Link::BsRis, l, n));
    }
  }
  for (int k = 0; k < K; ++k) {
    const PathGains g = path_gains(cfg, (cfg.mr_positions[k] - cfg.ris_pos).norm());
    for (int l = 0; l < L; ++l) {
      ch.h_ir(k, l) = rician_coefficient(cfg, g, sample_element(seed, Link::RisMr, k, l));
    }
  }
  for (int k = 0; k < K; ++k) {
    const PathGains g = path_gains(cfg, (cfg.mr_positions[k] - cfg.bs_pos).norm());
    const double amp = std::sqrt(cfg.direct_blockage) * g.nlos_amplitude;
    for (int n = 0; n < N; ++n) {
      ch.h_direct(k, n) = amp * sample_element(seed, Link::BsMr, k, n).nlos;
    }
  }
  return ch;
}

void write_channel_csv(const ChannelRealization& ch, std::ostream& out) {
  out << "link,row,col,re,im\n";
  char buf[96];
  auto dump = [&](const char* name, const ComplexMatrix& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g", m(r, c).real(), m(r, c).imag());
        out << name << ',' << r << ',' << c << ',' << buf << '\n';
      }
    }
  };
  dump("H_bi", ch.H_bi);
  dump("h_ir", ch.h_ir);
  dump("h_direct", ch.h_direct);
}

}  // namespace riscom
