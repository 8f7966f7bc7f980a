#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace riscom::simd {

using cdouble = std::complex<double>;

/// Instruction set a kernel table was built for.
enum class Isa { Scalar, Avx2 };

/// Inner loops on interleaved complex<double> buffers. Every entry has a
/// scalar reference; vector variants must agree with it to rounding.
struct KernelTable {
  const char* name;
  /// sum_i conj(x_i) * y_i
  cdouble (*dotc)(const cdouble* x, const cdouble* y, std::size_t n);
  /// sum_i |x_i|^2
  double (*abs2_sum)(const cdouble* x, std::size_t n);
  /// out_i = |s_i + delta * b_i|^2
  void (*axpy_abs2)(const cdouble* s, const cdouble* b, cdouble delta, double* out, std::size_t n);
  /// s_i += delta * b_i
  void (*axpy)(cdouble delta, const cdouble* b, cdouble* s, std::size_t n);
};

const KernelTable& scalar_kernels();
#if defined(RISCOM_BUILD_AVX2)
const KernelTable& avx2_kernels();
#endif

bool isa_available(Isa isa);

/// Table for a specific ISA; throws riscom::Error when it is not usable on
/// this build or CPU.
const KernelTable& kernels_for(Isa isa);

/// Active table. Chosen once: RISCOM_SIMD=scalar|avx2 overrides, otherwise
/// the widest ISA the CPU supports.
const KernelTable& kernels();

Isa active_isa();

/// Replaces the active table (tests and benchmarks).
void set_active_isa(Isa isa);

std::string_view isa_name(Isa isa);

inline cdouble dotc(std::span<const cdouble> x, std::span<const cdouble> y) {
  return kernels().dotc(x.data(), y.data(), x.size());
}

inline double abs2_sum(std::span<const cdouble> x) {
  return kernels().abs2_sum(x.data(), x.size());
}

}  // namespace riscom::simd
