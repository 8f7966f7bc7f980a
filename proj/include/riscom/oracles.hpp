#pragma once

// Reference computations that share no solver code with the library: brute
// force, closed forms and finite differences. Used by the tests, the
// acceptance binary and `riscom oracle`.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "riscom/beamformer.hpp"
#include "riscom/channel.hpp"
#include "riscom/phase.hpp"
#include "riscom/scenario.hpp"

namespace riscom::oracle {

/// max Tr(C W) over 2x2 W >= 0, Tr W <= P, Tr(A W) >= gamma by nested grid
/// refinement over (trace, Bloch radius, polar, azimuth). The final grid
/// step is below 1e-3 of each parameter range. Returns -inf if no grid
/// point is feasible.
double sdp_grid_2x2(const ComplexMatrix& C, const ComplexMatrix& A, double gamma, double P);

/// Largest eigenvalue by power iteration on Q + shift I (Q Hermitian PSD).
double lambda_max_power(const ComplexMatrix& Q, int iterations = 2000);

/// Single-user optimum log2(1 + P lambda_max(Q) / sigma^2).
double mrt_rate(const ComplexMatrix& Q, double P, double sigma2);

/// Central difference of f along D.
double directional_fd(const std::function<double(const ComplexMatrix&)>& f, const ComplexMatrix& W,
                      const ComplexMatrix& D, double h);

/// Sum rate evaluated from scratch: sum_k log2(1 + h_k Phi H W H^H Phi^H h_k^H / sigma^2).
double full_rate(const ComplexMatrix& W, const ChannelRealization& ch, const PhaseConfig& phi, double sigma2);
double full_gain(const ComplexMatrix& W, const ChannelRealization& ch, const PhaseConfig& phi,
                 const ComplexVector& steering);

struct BruteForcePhase {
  PhaseConfig phi;
  double rate = 0.0;
  bool feasible = false;
};

/// Every configuration, evaluated with full_rate / full_gain; feasible ones
/// (gain >= gamma) win over infeasible ones, first maximum in lexicographic order.
BruteForcePhase brute_force_phases(const ComplexMatrix& W, const ChannelRealization& ch, const ScenarioConfig& cfg);

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// The tiny-instance suite: SDP vs grid, SCA vs MRT, gradient vs finite
/// differences, local search vs brute force, alternate vs the two-case
/// closed form, without-RIS vs MRT.
std::vector<Check> run_suite(std::uint64_t seed = 2024);

/// Random draws used by the suite (exposed for tests).
ComplexMatrix random_hermitian(int n, std::mt19937_64& rng);
ComplexMatrix random_psd(int n, int rank, std::mt19937_64& rng);
ComplexMatrix random_rows(int k, int n, std::mt19937_64& rng);

/// A tiny scenario (L = L_x L_y elements, e bits) with the default physics.
ScenarioConfig tiny_scenario(int L_x, int L_y, int bits, int K);

}  // namespace riscom::oracle
