#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "riscom/simd/kernels.hpp"

using namespace riscom::simd;

namespace {

std::vector<cdouble> random_buffer(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<cdouble> v(n);
  for (auto& x : v) x = cdouble(g(rng), g(rng));
  return v;
}

}  // namespace

TEST_CASE("scalar kernels on hand-checked values") {
  const auto& k = scalar_kernels();
  const std::vector<cdouble> x = {{1, 1}, {0, 2}}, y = {{2, 0}, {1, -1}};
  // conj(1+i)*2 + conj(2i)*(1-i) = (2-2i) + (-2i)(1-i) = (2-2i) + (-2-2i)
  CHECK(k.dotc(x.data(), y.data(), 2) == cdouble(0, -4));
  CHECK(k.abs2_sum(x.data(), 2) == 6.0);
  std::vector<double> out(2);
  k.axpy_abs2(x.data(), y.data(), cdouble(0, 1), out.data(), 2);
  CHECK(out[0] == doctest::Approx(std::norm(x[0] + cdouble(0, 1) * y[0])));
  CHECK(out[1] == doctest::Approx(std::norm(x[1] + cdouble(0, 1) * y[1])));
  std::vector<cdouble> s = x;
  k.axpy(cdouble(2, 0), y.data(), s.data(), 2);
  CHECK(s[0] == cdouble(5, 1));
  CHECK(s[1] == cdouble(2, 0));
}

TEST_CASE("every available ISA agrees with the scalar reference") {
  std::mt19937_64 rng(21);
  const auto& ref = scalar_kernels();
  for (Isa isa : {Isa::Scalar, Isa::Avx2}) {
    if (!isa_available(isa)) {
      MESSAGE("skipping ", isa_name(isa), ": not available on this build/CPU");
      continue;
    }
    const auto& k = kernels_for(isa);
    // lengths cover empty input, tails shorter than a vector and long runs
    for (std::size_t n : {0u, 1u, 2u, 3u, 5u, 8u, 31u, 64u, 88u, 1000u}) {
      const auto x = random_buffer(n, rng), y = random_buffer(n, rng);
      const cdouble delta(0.37, -1.21);
      const double scale = 1.0 + ref.abs2_sum(x.data(), n) + ref.abs2_sum(y.data(), n);
      CHECK(std::abs(k.dotc(x.data(), y.data(), n) - ref.dotc(x.data(), y.data(), n)) <= 1e-12 * scale);
      CHECK(std::abs(k.abs2_sum(x.data(), n) - ref.abs2_sum(x.data(), n)) <= 1e-12 * scale);
      std::vector<double> a(n), b(n);
      k.axpy_abs2(x.data(), y.data(), delta, a.data(), n);
      ref.axpy_abs2(x.data(), y.data(), delta, b.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-13));
      auto s1 = x, s2 = x;
      k.axpy(delta, y.data(), s1.data(), n);
      ref.axpy(delta, y.data(), s2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(s1[i] - s2[i]) <= 1e-14 * (1 + std::abs(s2[i])));
    }
  }
}

TEST_CASE("active ISA can be switched and restored") {
  const Isa before = active_isa();
  set_active_isa(Isa::Scalar);
  CHECK(active_isa() == Isa::Scalar);
  CHECK(&kernels() == &scalar_kernels());
  set_active_isa(before);
  CHECK(active_isa() == before);
}

TEST_CASE("requesting an unavailable ISA throws") {
  if (!isa_available(Isa::Avx2)) CHECK_THROWS(kernels_for(Isa::Avx2));
  CHECK(isa_name(Isa::Scalar) == "scalar");
}
