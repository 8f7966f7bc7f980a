#include <immintrin.h>

#include "riscom/simd/kernels.hpp"

// Built with -mavx2 -mfma. Nothing here may run before dispatch has
// confirmed CPU support.

namespace riscom::simd {
namespace {

// Two complex doubles per register, laid out [re0 im0 re1 im1].

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// delta * b for two packed complex values.
inline __m256d cmul_bcast(__m256d dr, __m256d di, __m256d b) {
  const __m256d bswap = _mm256_permute_pd(b, 0b0101);
  return _mm256_fmaddsub_pd(dr, b, _mm256_mul_pd(di, bswap));
}

cdouble dotc_avx2(const cdouble* x, const cdouble* y, std::size_t n) {
  const double* px = reinterpret_cast<const double*>(x);
  const double* py = reinterpret_cast<const double*>(y);
  __m256d acc_re = _mm256_setzero_pd();  // [xr*yr, xi*yi, ...]
  __m256d acc_im = _mm256_setzero_pd();  // [xr*yi, xi*yr, ...]
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(px + 2 * i);
    const __m256d vy = _mm256_loadu_pd(py + 2 * i);
    acc_re = _mm256_fmadd_pd(vx, vy, acc_re);
    acc_im = _mm256_fmadd_pd(vx, _mm256_permute_pd(vy, 0b0101), acc_im);
  }
  alignas(32) double im_parts[4];
  _mm256_store_pd(im_parts, acc_im);
  double re = hsum(acc_re);
  double im = (im_parts[0] - im_parts[1]) + (im_parts[2] - im_parts[3]);
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

double abs2_sum_avx2(const cdouble* x, std::size_t n) {
  const double* px = reinterpret_cast<const double*>(x);
  const std::size_t len = 2 * n;
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    const __m256d a = _mm256_loadu_pd(px + i);
    const __m256d b = _mm256_loadu_pd(px + i + 4);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
    acc1 = _mm256_fmadd_pd(b, b, acc1);
  }
  for (; i + 4 <= len; i += 4) {
    const __m256d a = _mm256_loadu_pd(px + i);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < len; ++i) acc += px[i] * px[i];
  return acc;
}

void axpy_abs2_avx2(const cdouble* s, const cdouble* b, cdouble delta, double* out, std::size_t n) {
  const double* ps = reinterpret_cast<const double*>(s);
  const double* pb = reinterpret_cast<const double*>(b);
  const __m256d dr = _mm256_set1_pd(delta.real());
  const __m256d di = _mm256_set1_pd(delta.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vs = _mm256_loadu_pd(ps + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    const __m256d t = _mm256_add_pd(vs, cmul_bcast(dr, di, vb));
    const __m256d sq = _mm256_mul_pd(t, t);
    // [r0+i0, r0+i0, r1+i1, r1+i1]
    const __m256d pair = _mm256_hadd_pd(sq, sq);
    out[i] = _mm256_cvtsd_f64(pair);
    out[i + 1] = _mm_cvtsd_f64(_mm256_extractf128_pd(pair, 1));
  }
  const double r = delta.real(), im = delta.imag();
  for (; i < n; ++i) {
    const double tr = s[i].real() + (r * b[i].real() - im * b[i].imag());
    const double ti = s[i].imag() + (r * b[i].imag() + im * b[i].real());
    out[i] = tr * tr + ti * ti;
  }
}

void axpy_avx2(cdouble delta, const cdouble* b, cdouble* s, std::size_t n) {
  double* ps = reinterpret_cast<double*>(s);
  const double* pb = reinterpret_cast<const double*>(b);
  const __m256d dr = _mm256_set1_pd(delta.real());
  const __m256d di = _mm256_set1_pd(delta.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vs = _mm256_loadu_pd(ps + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    _mm256_storeu_pd(ps + 2 * i, _mm256_add_pd(vs, cmul_bcast(dr, di, vb)));
  }
  const double r = delta.real(), im = delta.imag();
  for (; i < n; ++i) {
    s[i] = cdouble(s[i].real() + (r * b[i].real() - im * b[i].imag()),
                   s[i].imag() + (r * b[i].imag() + im * b[i].real()));
  }
}

}  // namespace

const KernelTable& avx2_kernels() {
  static const KernelTable table{"avx2", dotc_avx2, abs2_sum_avx2, axpy_abs2_avx2, axpy_avx2};
  return table;
}

}  // namespace riscom::simd
