#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "riscom/channel.hpp"
#include "riscom/numerics.hpp"
#include "riscom/phase.hpp"
#include "riscom/scenario.hpp"

namespace riscom {

/// Hermitian PSD transmit covariance W (N x N), Tr(W) <= P_max.
struct TransmitCovariance {
  ComplexMatrix W;
};

/// maximize Tr(C W)  s.t.  Tr(A_sense W) >= gamma_th,  Tr(W) <= P_max,  W >= 0.
struct SdpProblem {
  ComplexMatrix C;
  ComplexMatrix A_sense;
  double gamma_th = 0.0;
  double P_max = 1.0;
};

struct SdpOptions {
  int max_newton_iterations = 200;
  double gap_tolerance = 1e-8;  ///< relative to 1 + |objective|
  double barrier_growth = 10.0;
};

struct SdpSolution {
  TransmitCovariance W;
  double objective = 0.0;
  double gap = 0.0;  ///< duality-gap bound in objective units
  int newton_iterations = 0;
};

/// P_max * lambda_max(A_sense): the largest beampattern gain any feasible W
/// can reach. The SDP is feasible iff this is >= gamma_th.
double feasibility_bound(const ComplexMatrix& A_sense, double P_max);

/// sum_k Q_k / ((Tr(W Q_k) + sigma^2) ln 2), the gradient of the sum rate.
ComplexMatrix sca_gradient(const ComplexMatrix& W, std::span<const ComplexMatrix> Q, double sigma2);

/// Log-barrier interior point. Throws Infeasible or NoConvergence.
SdpSolution solve_linear_sdp(const SdpProblem& p, const SdpOptions& opts = {});

/// Fixed-Phi view of the covariance problem, with Q_k = r_k^H r_k and
/// A_sense = c^H c stored through their rows.
struct RateProblem {
  ComplexMatrix rows;          ///< K x N, r_k = h_ir,k Phi H_bi
  Eigen::RowVectorXcd sense;   ///< 1 x N, c = a^H Phi H_bi
  double sigma2 = 1.0;
  double P_max = 1.0;
  double gamma_th = 0.0;

  ComplexMatrix sensing_matrix() const;
  std::vector<ComplexMatrix> rate_matrices() const;
  double rate(const ComplexMatrix& W) const;
  double gain(const ComplexMatrix& W) const;
  double gain(const ComplexVector& w) const;
  double rate(const ComplexVector& w) const;
};

RateProblem make_rate_problem(const ChannelRealization& ch, const PhaseConfig& phi,
                              const ScenarioConfig& cfg);
RateProblem make_rate_problem(const ChannelRealization& ch, const PhaseConfig& phi,
                              const ScenarioConfig& cfg, const ComplexVector& steering);

/// (gamma/lambda_max) v v^H topped up with identity to full power: feasible,
/// and strictly inside the sensing constraint whenever P_max lambda_max > gamma.
TransmitCovariance default_initial_covariance(const RateProblem& p);

struct ScaOptions {
  double delta = 1e-4;  ///< stop once an iteration gains <= delta bits/s/Hz
  int max_inner = 100;
  SdpOptions sdp;
};

struct ScaIterate {
  int iter = 0;
  double rate = 0.0;
  double gain = 0.0;
  double trace_W = 0.0;
  double gap = 0.0;   ///< linearisation gap Tr(grad (S - W)), upper bound on suboptimality
  double step = 0.0;  ///< accepted step length towards the SDP solution
};

struct ScaResult {
  TransmitCovariance W;
  double rate = 0.0;
  int inner_iters = 0;
  bool converged = false;
  std::vector<ScaIterate> trace;
};

/// Successive linearisation of the concave sum rate. Each iteration solves
/// the linear SDP at the current gradient and moves to the best point on
/// the segment towards its solution. Throws Infeasible.
ScaResult beamform_sca(const RateProblem& p, const ScaOptions& opts,
                       std::optional<TransmitCovariance> init = std::nullopt);

ScaResult beamform_sca(const PhaseConfig& phi, const ChannelRealization& ch, const ScenarioConfig& cfg,
                       std::optional<TransmitCovariance> init = std::nullopt);

/// iter,rate,gain,trace_W,gap
void write_trace_csv(std::span<const ScaIterate> trace, std::ostream& out);

/// Rank-one recovery: the scaled dominant eigenvector plus Gaussian
/// randomisations drawn with covariance W, each rescaled to the power
/// budget. Returns the sensing-feasible candidate with the highest rate.
/// Throws NoFeasibleRankOne.
ComplexVector extract_rank_one(const TransmitCovariance& W, const RateProblem& p, int randomization_count,
                               std::uint64_t seed);

}  // namespace riscom
