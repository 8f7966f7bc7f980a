#include "riscom/simd/kernels.hpp"

namespace riscom::simd {
namespace {

cdouble dotc_scalar(const cdouble* x, const cdouble* y, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

double abs2_sum_scalar(const cdouble* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return acc;
}

void axpy_abs2_scalar(const cdouble* s, const cdouble* b, cdouble delta, double* out, std::size_t n) {
  const double dr = delta.real(), di = delta.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double tr = s[i].real() + (dr * b[i].real() - di * b[i].imag());
    const double ti = s[i].imag() + (dr * b[i].imag() + di * b[i].real());
    out[i] = tr * tr + ti * ti;
  }
}

void axpy_scalar(cdouble delta, const cdouble* b, cdouble* s, std::size_t n) {
  const double dr = delta.real(), di = delta.imag();
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = cdouble(s[i].real() + (dr * b[i].real() - di * b[i].imag()),
                   s[i].imag() + (dr * b[i].imag() + di * b[i].real()));
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", dotc_scalar, abs2_sum_scalar, axpy_abs2_scalar, axpy_scalar};
  return table;
}

}  // namespace riscom::simd
