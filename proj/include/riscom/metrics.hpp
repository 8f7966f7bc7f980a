#pragma once

#include <vector>

#include "riscom/channel.hpp"
#include "riscom/numerics.hpp"
#include "riscom/phase.hpp"

namespace riscom {

/// G_k = diag(h_ir,k) H_bi and u, with u[l] = e^{-j phi_l} so that
/// u^H G_k w == h_ir,k Phi H_bi w.
struct EffectiveChannel {
  std::vector<ComplexMatrix> G;
  ComplexVector u;
};

EffectiveChannel effective_channel(const ChannelRealization& ch, const PhaseConfig& phi);

/// Row k is h_ir,k Phi H_bi (so Q_k = r_k^H r_k). K x N.
ComplexMatrix cascaded_rows(const ChannelRealization& ch, const PhaseConfig& phi);

/// a^H Phi H_bi as a 1 x N row (so A_sense = c^H c).
Eigen::RowVectorXcd sensing_row(const ComplexVector& a, const PhaseConfig& phi, const ComplexMatrix& H_bi);

/// |h_ir,k Phi H_bi w|^2 / sigma^2. There is no interference term: every
/// MR receives the same beam, so this is an SNR.
double sinr(const ChannelRealization& ch, const PhaseConfig& phi, const ComplexVector& w, int k,
            double sigma2);

/// sum_k log2(1 + gamma_k), bits/s/Hz.
double sum_rate(const ChannelRealization& ch, const PhaseConfig& phi, const ComplexVector& w,
                double sigma2);

/// a^H Phi H W H^H Phi^H a. Throws NonPSDCovariance.
double beampattern_gain(const ComplexVector& a, const PhaseConfig& phi, const ComplexMatrix& H_bi,
                        const ComplexMatrix& W);

/// sum_k log2(1 + Tr(W G_k^H u u^H G_k) / sigma^2). Throws NonPSDCovariance.
double sum_rate_cov(const EffectiveChannel& G, const ComplexMatrix& W, double sigma2);

/// Per-row received powers r_k W r_k^H.
RealVector received_powers(const ComplexMatrix& rows, const ComplexMatrix& W);

/// sum_k log2(1 + r_k W r_k^H / sigma^2) on precomputed rows; no PSD check.
double sum_rate_rows(const ComplexMatrix& rows, const ComplexMatrix& W, double sigma2);

/// log2(1 + r_k W r_k^H / sigma^2) per row.
RealVector user_rates_rows(const ComplexMatrix& rows, const ComplexMatrix& W, double sigma2);

/// Throws NonPSDCovariance unless W is Hermitian PSD within 1e-10 (1 + ||W||_F).
void require_psd(const ComplexMatrix& W, const char* where);

}  // namespace riscom
