#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "riscom/numerics.hpp"

namespace riscom {

/// Discrete RIS configuration: element l applies phase 2*pi*m[l] / 2^bits.
struct PhaseConfig {
  std::vector<int> m;
  int bits = 1;

  int levels() const noexcept { return 1 << bits; }
  std::size_t size() const noexcept { return m.size(); }
  bool valid() const noexcept;

  static PhaseConfig zeros(int L, int bits);
  static PhaseConfig random(int L, int bits, std::mt19937_64& rng);

  friend bool operator==(const PhaseConfig&, const PhaseConfig&) = default;
};

/// e^{j 2 pi level / levels}
cdouble phasor(int level, int levels);

/// Diagonal of Phi: e^{j phi_l}.
ComplexVector phase_diagonal(const PhaseConfig& p);

/// diag(e^{j phi_1}, ..., e^{j phi_L}).
ComplexMatrix phase_matrix(const PhaseConfig& p);

}  // namespace riscom
