#include "riscom/metrics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "riscom/simd/kernels.hpp"

namespace riscom {

bool PhaseConfig::valid() const noexcept {
  if (bits < 1 || bits > 16) return false;
  for (int v : m) {
    if (v < 0 || v >= levels()) return false;
  }
  return true;
}

PhaseConfig PhaseConfig::zeros(int L, int bits) {
  return PhaseConfig{std::vector<int>(static_cast<std::size_t>(L), 0), bits};
}

PhaseConfig PhaseConfig::random(int L, int bits, std::mt19937_64& rng) {
  PhaseConfig p = zeros(L, bits);
  std::uniform_int_distribution<int> dist(0, p.levels() - 1);
  for (auto& v : p.m) v = dist(rng);
  return p;
}

cdouble phasor(int level, int levels) {
  // Exact values on the axes keep e=1,2 alphabets free of rounding noise.
  if (level * 4 % levels == 0) {
    switch ((level * 4 / levels) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * level / levels);
}

ComplexVector phase_diagonal(const PhaseConfig& p) {
  ComplexVector d(static_cast<Eigen::Index>(p.size()));
  for (std::size_t l = 0; l < p.size(); ++l) d(static_cast<Eigen::Index>(l)) = phasor(p.m[l], p.levels());
  return d;
}

ComplexMatrix phase_matrix(const PhaseConfig& p) {
  return phase_diagonal(p).asDiagonal();
}

EffectiveChannel effective_channel(const ChannelRealization& ch, const PhaseConfig& phi) {
  EffectiveChannel out;
  out.u = phase_diagonal(phi).conjugate();
  out.G.reserve(static_cast<std::size_t>(ch.h_ir.rows()));
  for (Eigen::Index k = 0; k < ch.h_ir.rows(); ++k) {
    out.G.push_back(ch.h_ir.row(k).transpose().asDiagonal() * ch.H_bi);
  }
  return out;
}

ComplexMatrix cascaded_rows(const ChannelRealization& ch, const PhaseConfig& phi) {
  const ComplexVector d = phase_diagonal(phi);
  return (ch.h_ir * d.asDiagonal()) * ch.H_bi;
}

Eigen::RowVectorXcd sensing_row(const ComplexVector& a, const PhaseConfig& phi, const ComplexMatrix& H_bi) {
  const ComplexVector d = phase_diagonal(phi);
  return (a.conjugate().cwiseProduct(d)).transpose() * H_bi;
}

double sinr(const ChannelRealization& ch, const PhaseConfig& phi, const ComplexVector& w, int k,
            double sigma2) {
  const ComplexVector d = phase_diagonal(phi);
  const ComplexVector hw = ch.H_bi * w;
  const ComplexVector hk = ch.h_ir.row(k).transpose().cwiseProduct(d);
  // h Phi H w = sum_l hk_l (Hw)_l = dotc(conj(hk), Hw)
  const ComplexVector hk_conj = hk.conjugate();
  const cdouble y = simd::dotc({hk_conj.data(), static_cast<std::size_t>(hk_conj.size())},
                               {hw.data(), static_cast<std::size_t>(hw.size())});
  return std::norm(y) / sigma2;
}

double sum_rate(const ChannelRealization& ch, const PhaseConfig& phi, const ComplexVector& w,
                double sigma2) {
  double total = 0.0;
  for (Eigen::Index k = 0; k < ch.h_ir.rows(); ++k) {
    total += std::log2(1.0 + sinr(ch, phi, w, static_cast<int>(k), sigma2));
  }
  return total;
}

void require_psd(const ComplexMatrix& W, const char* where) {
  if (!numerics::is_psd(W)) {
    throw NonPSDCovariance(std::string(where) + ": covariance is not Hermitian PSD");
  }
}

double beampattern_gain(const ComplexVector& a, const PhaseConfig& phi, const ComplexMatrix& H_bi,
                        const ComplexMatrix& W) {
  require_psd(W, "beampattern_gain");
  const Eigen::RowVectorXcd c = sensing_row(a, phi, H_bi);
  return std::max(0.0, (c * W * c.adjoint())(0, 0).real());
}

RealVector received_powers(const ComplexMatrix& rows, const ComplexMatrix& W) {
  const ComplexMatrix rw = rows * W;
  RealVector p(rows.rows());
  for (Eigen::Index k = 0; k < rows.rows(); ++k) {
    p(k) = std::max(0.0, rw.row(k).dot(rows.row(k)).real());
  }
  return p;
}

double sum_rate_rows(const ComplexMatrix& rows, const ComplexMatrix& W, double sigma2) {
  return user_rates_rows(rows, W, sigma2).sum();
}

RealVector user_rates_rows(const ComplexMatrix& rows, const ComplexMatrix& W, double sigma2) {
  RealVector p = received_powers(rows, W);
  for (Eigen::Index k = 0; k < p.size(); ++k) p(k) = std::log2(1.0 + p(k) / sigma2);
  return p;
}

double sum_rate_cov(const EffectiveChannel& G, const ComplexMatrix& W, double sigma2) {
  require_psd(W, "sum_rate_cov");
  double total = 0.0;
  for (const auto& Gk : G.G) {
    const Eigen::RowVectorXcd r = G.u.adjoint() * Gk;  // u^H G_k
    const double p = std::max(0.0, (r * W * r.adjoint())(0, 0).real());
    total += std::log2(1.0 + p / sigma2);
  }
  return total;
}

}  // namespace riscom
