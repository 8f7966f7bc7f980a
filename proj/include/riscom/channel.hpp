#pragma once

#include <cstdint>
#include <iosfwd>

#include "riscom/numerics.hpp"
#include "riscom/scenario.hpp"

namespace riscom {

/// One quasi-static draw of every link in the scenario.
struct ChannelRealization {
  ComplexMatrix H_bi;      ///< L x N, BS -> RIS
  ComplexMatrix h_ir;      ///< K x L, row k is h_ir,k (RIS -> MR k)
  ComplexMatrix h_direct;  ///< K x N, row k is the blocked BS -> MR k link
  std::uint64_t seed = 0;
};

enum class Link : std::uint32_t { BsRis = 0, RisMr = 1, BsMr = 2 };

/// Raw random draws behind one channel coefficient: the LoS phase psi and
/// the unit-variance circularly symmetric NLoS sample. A pure function of
/// (seed, link, row, col), so realizations never depend on draw order.
struct ElementSample {
  double psi;
  cdouble nlos;
};

ElementSample sample_element(std::uint64_t seed, Link link, int row, int col);

/// Large-scale amplitude terms of one link at distance `d` (clamped to >= 1 m).
struct PathGains {
  double los_amplitude;   ///< sqrt(beta0 d^-alpha1)
  double nlos_amplitude;  ///< sqrt(beta0 d^-alpha2)
};

PathGains path_gains(const ScenarioConfig& cfg, double distance);

/// E|h|^2 of a Rician link at distance `d`.
double rician_mean_power(const ScenarioConfig& cfg, double distance);

/// Rician coefficient sqrt(K/(K+1)) * LoS + sqrt(1/(K+1)) * NLoS.
cdouble rician_coefficient(const ScenarioConfig& cfg, const PathGains& g, const ElementSample& s);

ChannelRealization gen_channels(const ScenarioConfig& cfg, std::uint64_t seed);

/// CSV audit dump: link,row,col,re,im (link in {H_bi, h_ir, h_direct}).
void write_channel_csv(const ChannelRealization& ch, std::ostream& out);

}  // namespace riscom
