#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "riscom/numerics.hpp"
#include "riscom/oracles.hpp"

using namespace riscom;
using namespace riscom::numerics;

namespace {

// closed-form eigenvalues of a 2x2 Hermitian [[a, b], [conj b, d]]
std::pair<double, double> eig2(const ComplexMatrix& m) {
  const double a = m(0, 0).real(), d = m(1, 1).real();
  const double disc = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(m(0, 1)));
  return {0.5 * (a + d) + disc, 0.5 * (a + d) - disc};
}

}  // namespace

TEST_CASE("kron of identities is the identity") {
  const ComplexMatrix k = kron(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3));
  CHECK((k - ComplexMatrix::Identity(6, 6)).norm() == 0.0);
}

TEST_CASE("kron of basis vectors") {
  ComplexMatrix a(2, 1), b(2, 1);
  a << 1, 0;
  b << 0, 1;
  const ComplexMatrix k = kron(a, b);
  REQUIRE(k.rows() == 4);
  CHECK(k(0, 0) == cdouble(0));
  CHECK(k(1, 0) == cdouble(1));
  CHECK(k(2, 0) == cdouble(0));
  CHECK(k(3, 0) == cdouble(0));
}

TEST_CASE("kron matches the element-wise definition and is bilinear") {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 10; ++rep) {
    const ComplexMatrix A = oracle::random_rows(2, 3, rng), B = oracle::random_rows(3, 2, rng);
    const ComplexMatrix K = kron(A, B);
    REQUIRE(K.rows() == 6);
    REQUIRE(K.cols() == 6);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 3; ++j)
        for (int p = 0; p < 3; ++p)
          for (int q = 0; q < 2; ++q) CHECK(std::abs(K(i * 3 + p, j * 2 + q) - A(i, j) * B(p, q)) < 1e-15);
    const cdouble alpha(0.3, -1.7);
    CHECK((kron(alpha * A, B) - alpha * K).norm() < 1e-13);
  }
}

TEST_CASE("hermitian_eig on identity and diagonal") {
  const auto e = hermitian_eig(ComplexMatrix::Identity(2, 2));
  CHECK(e.values[0] == doctest::Approx(1.0));
  CHECK(e.values[1] == doctest::Approx(1.0));

  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  const auto f = hermitian_eig(d);
  CHECK(f.values[0] == doctest::Approx(3.0));
  CHECK(f.values[1] == doctest::Approx(1.0));
  CHECK(std::abs(f.vectors(0, 0) - cdouble(1.0)) < 1e-12);
  CHECK(std::abs(f.vectors(1, 1) - cdouble(1.0)) < 1e-12);
}

TEST_CASE("hermitian_eig matches the 2x2 characteristic roots") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    const ComplexMatrix m = oracle::random_hermitian(2, rng);
    const auto [l1, l2] = eig2(m);
    const auto e = hermitian_eig(m);
    CHECK(e.values[0] == doctest::Approx(l1).epsilon(1e-12));
    CHECK(e.values[1] == doctest::Approx(l2).epsilon(1e-12));
  }
}

TEST_CASE("hermitian_eig reconstruction, orthonormality and phase convention up to 64x64") {
  std::mt19937_64 rng(7);
  for (int n : {1, 3, 8, 17, 64}) {
    const ComplexMatrix m = oracle::random_hermitian(n, rng);
    const auto e = hermitian_eig(m);
    const double fro = frobenius_norm(m);
    const ComplexMatrix rec = e.vectors * e.values.cast<cdouble>().asDiagonal() * e.vectors.adjoint();
    CHECK((rec - m).norm() <= 1e-7 * (1 + fro));
    CHECK((e.vectors.adjoint() * e.vectors - ComplexMatrix::Identity(n, n)).norm() < 1e-8 * n);
    for (int i = 0; i < n; ++i) {
      CHECK((m * e.vectors.col(i) - e.values[i] * e.vectors.col(i)).norm() <= 1e-8 * fro);
      if (i > 0) CHECK(e.values[i - 1] >= e.values[i]);
      Eigen::Index arg;
      e.vectors.col(i).cwiseAbs().maxCoeff(&arg);
      CHECK(std::abs(e.vectors(arg, i).imag()) < 1e-12);
      CHECK(e.vectors(arg, i).real() > 0.0);
    }
  }
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(hermitian_eig(m), NonHermitianInput);
  CHECK_THROWS_AS(hermitian_eig(ComplexMatrix::Zero(2, 3)), NonHermitianInput);
}

TEST_CASE("solve_hermitian_positive trivial systems") {
  ComplexVector b(3);
  b << cdouble(1, 2), cdouble(-3, 0.5), cdouble(0, -1);
  CHECK((solve_hermitian_positive(ComplexMatrix::Identity(3, 3), b) - b).norm() < 1e-15);

  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 4.0;
  ComplexVector r(2);
  r << 2.0, 4.0;
  const ComplexVector x = solve_hermitian_positive(d, r);
  CHECK(std::abs(x[0] - cdouble(1.0)) < 1e-15);
  CHECK(std::abs(x[1] - cdouble(1.0)) < 1e-15);
}

TEST_CASE("solve_hermitian_positive residual and eig-based inverse") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const ComplexMatrix m = oracle::random_psd(3, 3, rng) + 0.1 * ComplexMatrix::Identity(3, 3);
    const ComplexVector b = oracle::random_rows(3, 1, rng);
    const ComplexVector x = solve_hermitian_positive(m, b);
    CHECK((m * x - b).norm() <= 1e-8 * (frobenius_norm(m) * x.norm() + b.norm()));
    const auto e = hermitian_eig(m);
    const ComplexMatrix inv =
        e.vectors * e.values.cwiseInverse().cast<cdouble>().asDiagonal() * e.vectors.adjoint();
    CHECK((inv * b - x).norm() <= 1e-8 * x.norm());
  }
}

TEST_CASE("solve_hermitian_positive rejects indefinite matrices") {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(1, 1) = -1.0;
  CHECK_THROWS_AS(solve_hermitian_positive(m, ComplexVector::Ones(2)), NotPositiveDefinite);
}

TEST_CASE("PSD projection and checks") {
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 20; ++rep) {
    const ComplexMatrix m = oracle::random_hermitian(6, rng);
    const ComplexMatrix p = project_psd(m);
    CHECK(hermitian_eig(p).values.minCoeff() >= -1e-10);
    CHECK(is_psd(p));
  }
  ComplexMatrix neg = ComplexMatrix::Identity(2, 2);
  neg(0, 0) = -1.0;
  CHECK_FALSE(is_psd(neg));
  CHECK(is_hermitian(oracle::random_hermitian(4, rng)));
}

TEST_CASE("trace_product equals Re Tr(AB)") {
  std::mt19937_64 rng(17);
  const ComplexMatrix a = oracle::random_hermitian(5, rng), b = oracle::random_hermitian(5, rng);
  CHECK(trace_product(a, b) == doctest::Approx((a * b).trace().real()).epsilon(1e-12));
}
