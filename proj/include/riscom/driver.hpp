#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "riscom/beamformer.hpp"
#include "riscom/channel.hpp"
#include "riscom/phase.hpp"
#include "riscom/scenario.hpp"

namespace riscom {

enum class Scheme { Proposed, WithoutRIS, RPS, APT };

std::string_view scheme_name(Scheme s);
/// Accepts the names printed by scheme_name, case-insensitively. Throws InvalidConfig.
Scheme parse_scheme(std::string_view s);

struct RunResult {
  Scheme scheme = Scheme::Proposed;
  double rate_relaxed = 0.0;    ///< sum rate of the SDR covariance W
  double rate_extracted = 0.0;  ///< sum rate of the recovered rank-one w
  double gain = 0.0;            ///< beampattern gain of W towards the target
  bool feasible = false;
  bool converged = false;
  int outer_iters = 0;
  int inner_iters_total = 0;
  int phase_sweeps_total = 0;
  int phase_redraws = 0;
  double wall_time = 0.0;
  std::uint64_t seed = 0;

  PhaseConfig phi;
  ComplexMatrix W;
  ComplexVector w;
  RealVector user_rates;            ///< per-MR rates under W
  RealVector user_rates_extracted;  ///< per-MR rates under w (empty if extraction failed)
  std::vector<double> history;      ///< rate after every beamforming and phase half-step
};

struct AlternateOptions {
  std::optional<PhaseConfig> initial_phase;  ///< skips the random draw
  int randomizations = 200;
};

/// Alternates beamform_sca and local_search from a random feasible Phi.
RunResult alternate(const ChannelRealization& ch, const ScenarioConfig& cfg, std::uint64_t seed,
                    const AlternateOptions& opts = {});

/// Beamforming on the direct BS->MR links only; no sensing constraint.
RunResult run_without_ris(const ChannelRealization& ch, const ScenarioConfig& cfg, std::uint64_t seed);

/// One random Phi, optimised W.
RunResult run_rps(const ChannelRealization& ch, const ScenarioConfig& cfg, std::uint64_t seed);

/// Equal per-antenna power, co-phased to the aggregate channel, Phi by local search.
RunResult run_apt(const ChannelRealization& ch, const ScenarioConfig& cfg, std::uint64_t seed);

RunResult run_scheme(Scheme s, const ChannelRealization& ch, const ScenarioConfig& cfg, std::uint64_t seed);

/// The random Phi draws shared by all schemes for a given seed; draw i is
/// the i-th redraw.
class PhaseDraws {
 public:
  PhaseDraws(const ScenarioConfig& cfg, std::uint64_t seed);
  PhaseConfig next();

 private:
  int L_, bits_;
  std::mt19937_64 rng_;
};

inline constexpr int kMaxPhaseRedraws = 100;

}  // namespace riscom
