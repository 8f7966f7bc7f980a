#include "riscom/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace riscom::numerics {

double frobenius_norm(const ComplexMatrix& m) { return m.norm(); }

bool is_hermitian(const ComplexMatrix& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double tol = rel_tol * (1.0 + frobenius_norm(m));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
    }
  }
  return true;
}

bool is_psd(const ComplexMatrix& m, double rel_tol) {
  if (!is_hermitian(m, rel_tol)) return false;
  if (m.size() == 0) return true;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0) >= -rel_tol * (1.0 + frobenius_norm(m));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  return 0.5 * (m + m.adjoint());
}

namespace {

void normalise_phase(Eigen::Ref<ComplexVector> v) {
  Eigen::Index best = 0;
  double best_mag = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    // Strictly greater keeps the lowest index among equal magnitudes.
    if (mag > best_mag * (1.0 + 1e-12)) {
      best_mag = mag;
      best = i;
    }
  }
  if (best_mag <= 0.0) return;
  v *= std::conj(v(best)) / best_mag;
  v(best) = cdouble(std::abs(v(best)), 0.0);
}

}  // namespace

EigenDecomposition hermitian_eig(const ComplexMatrix& m) {
  if (!is_hermitian(m)) {
    throw NonHermitianInput("hermitian_eig: input is not Hermitian (" +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ")");
  }
  const Eigen::Index n = m.rows();
  EigenDecomposition out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  if (n == 0) return out;

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(m));
  // Eigen sorts ascending; reverse.
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = es.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = es.eigenvectors().col(n - 1 - i);
    normalise_phase(out.vectors.col(i));
  }
  return out;
}

std::pair<double, ComplexVector> dominant_eigenpair(const ComplexMatrix& m) {
  auto eig = hermitian_eig(m);
  return {eig.values(0), eig.vectors.col(0)};
}

bool cholesky(const ComplexMatrix& m, ComplexMatrix& lower) {
  const Eigen::Index n = m.rows();
  lower = ComplexMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double diag = m(j, j).real();
    for (Eigen::Index k = 0; k < j; ++k) diag -= std::norm(lower(j, k));
    if (!(diag > 0.0)) return false;
    const double ljj = std::sqrt(diag);
    lower(j, j) = ljj;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      cdouble s = m(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= lower(i, k) * std::conj(lower(j, k));
      lower(i, j) = s / ljj;
    }
  }
  return true;
}

ComplexVector solve_hermitian_positive(const ComplexMatrix& m, const ComplexVector& b) {
  if (m.rows() != m.cols() || m.rows() != b.size()) {
    throw Error("solve_hermitian_positive: dimension mismatch");
  }
  ComplexMatrix l;
  if (!cholesky(m, l)) {
    throw NotPositiveDefinite("solve_hermitian_positive: nonpositive pivot");
  }
  const Eigen::Index n = m.rows();
  ComplexVector y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    cdouble s = b(i);
    for (Eigen::Index k = 0; k < i; ++k) s -= l(i, k) * y(k);
    y(i) = s / l(i, i);
  }
  ComplexVector x(n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    cdouble s = y(i);
    for (Eigen::Index k = i + 1; k < n; ++k) s -= std::conj(l(k, i)) * x(k);
    x(i) = s / l(i, i);
  }
  return x;
}

ComplexMatrix project_psd(const ComplexMatrix& m) {
  auto eig = hermitian_eig(m);
  RealVector clipped = eig.values.cwiseMax(0.0);
  return eig.vectors * clipped.cast<cdouble>().asDiagonal() * eig.vectors.adjoint();
}

double trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  // Tr(AB) = sum_ij A_ij B_ji
  return (a.array() * b.transpose().array()).sum().real();
}

}  // namespace riscom::numerics
