#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "riscom/error.hpp"

namespace riscom {

using cdouble = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace numerics {

/// Eigenpairs of a Hermitian matrix, eigenvalues in descending order.
/// Column i of `vectors` pairs with `values[i]`.
struct EigenDecomposition {
  RealVector values;
  ComplexMatrix vectors;
};

double frobenius_norm(const ComplexMatrix& m);

/// max_{i,j} |M[i,j] - conj(M[j,i])| <= 1e-10 * (1 + ||M||_F), square only.
bool is_hermitian(const ComplexMatrix& m, double rel_tol = 1e-10);

/// Hermitian with smallest eigenvalue >= -rel_tol * (1 + ||M||_F).
bool is_psd(const ComplexMatrix& m, double rel_tol = 1e-10);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Hermitian eigendecomposition with a reproducible phase convention: in
/// each eigenvector the entry of largest magnitude (lowest index on ties) is
/// rotated to be real and positive.
/// Throws NonHermitianInput.
EigenDecomposition hermitian_eig(const ComplexMatrix& m);

/// Largest eigenvalue and its (convention-normalised) eigenvector.
std::pair<double, ComplexVector> dominant_eigenpair(const ComplexMatrix& m);

/// Solves M x = b by complex Cholesky. Throws NotPositiveDefinite when a
/// pivot is nonpositive.
ComplexVector solve_hermitian_positive(const ComplexMatrix& m, const ComplexVector& b);

/// Lower-triangular Cholesky factor; returns false instead of throwing.
bool cholesky(const ComplexMatrix& m, ComplexMatrix& lower);

/// Eigenvalues clipped at zero; the nearest PSD matrix in Frobenius norm.
ComplexMatrix project_psd(const ComplexMatrix& m);

/// (M + M^H) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& m);

/// Real part of Tr(A B) for Hermitian A, B without forming the product.
double trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace numerics
}  // namespace riscom
