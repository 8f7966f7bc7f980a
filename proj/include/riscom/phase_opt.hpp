#pragma once

#include <vector>

#include "riscom/beamformer.hpp"
#include "riscom/channel.hpp"
#include "riscom/phase.hpp"
#include "riscom/scenario.hpp"

namespace riscom {

/// Incremental evaluator for sum rate and beampattern gain under a fixed W
/// while single RIS elements change. W = sum_r lambda_r v_r v_r^H; with
/// s_kr = sum_l e^{j phi_l} h_kl (H v_r)_l the received power of MR k is
/// sum_r lambda_r |s_kr|^2, so one element change is a rank-one update of s.
class PhaseEvaluator {
 public:
  PhaseEvaluator(const ComplexMatrix& W, const ChannelRealization& ch, const ComplexVector& steering,
                 double sigma2, const PhaseConfig& phi);

  double rate() const;
  double gain() const;

  /// Rate and gain if element l took `level`, without committing.
  void probe(int l, int level, double& rate, double& gain);
  void commit(int l, int level);
  /// Recompute all partial sums from the current phases.
  void refresh();

  const PhaseConfig& phase() const noexcept { return phi_; }

 private:
  int K_, R_, L_;
  double sigma2_;
  PhaseConfig phi_;
  std::vector<double> lambda_;
  std::vector<cdouble> b_;  // [l][k][r]
  std::vector<cdouble> t_;  // [l][r]
  std::vector<cdouble> s_;  // [k][r]
  std::vector<cdouble> g_;  // [r]
  std::vector<double> s_pow_, g_pow_;

  double rate_of(const std::vector<cdouble>& s) const;
  double gain_of(const std::vector<cdouble>& g) const;
};

struct LocalSearchResult {
  PhaseConfig phi;
  double rate = 0.0;
  double gain = 0.0;
  int sweeps = 0;
  bool hit_cap = false;
};

struct LocalSearchOptions {
  double vartheta = 1e-3;
  int max_sweeps = 100;
  std::vector<double>* update_trace = nullptr;  ///< rate after every element update
};

/// Coordinate ascent over elements 1..L, trying every level of one element
/// with the others fixed. Levels that would break the sensing threshold are
/// skipped; if every level breaks it the element keeps its value. Ties go to
/// the smallest level. Stops once a full sweep improves by <= vartheta.
LocalSearchResult local_search(const TransmitCovariance& W, const ChannelRealization& ch,
                               const ScenarioConfig& cfg, const PhaseConfig& init,
                               const LocalSearchOptions& opts);
LocalSearchResult local_search(const TransmitCovariance& W, const ChannelRealization& ch,
                               const ScenarioConfig& cfg, const PhaseConfig& init);

struct ExhaustiveResult {
  PhaseConfig phi;
  double rate = 0.0;
  double gain = 0.0;
  bool feasible = false;  ///< false when no configuration meets the threshold
};

/// Enumerates all 2^(L e) configurations (lexicographic, first maximum
/// wins). Throws InstanceTooLarge when L * e > 20.
ExhaustiveResult exhaustive_search(const TransmitCovariance& W, const ChannelRealization& ch,
                                   const ScenarioConfig& cfg);

}  // namespace riscom
