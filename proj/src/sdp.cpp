#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include "riscom/beamformer.hpp"

namespace riscom {

namespace {

using numerics::trace_product;

double lambda_max(const ComplexMatrix& m) {
  return numerics::hermitian_eig(m).values[0];
}

// Everything in the barrier is in normalised units: ||C|| = 1, P = 1,
// lambda_max(A) = 1.
struct Barrier {
  const ComplexMatrix& C;
  const ComplexMatrix& A;
  double gamma;
  bool with_sense;

  // Slacks (sense, power); false outside the domain.
  bool slacks(const ComplexMatrix& W, double& sA, double& sP) const {
    sP = 1.0 - W.trace().real();
    sA = with_sense ? trace_product(A, W) - gamma : 1.0;
    return sP > 0.0 && sA > 0.0;
  }

  // t * (-Tr CW) - log sA - log sP - log det W, +inf outside the domain.
  double value(const ComplexMatrix& W, double t) const {
    double sA, sP;
    if (!slacks(W, sA, sP)) return std::numeric_limits<double>::infinity();
    ComplexMatrix Lc;
    if (!numerics::cholesky(W, Lc)) return std::numeric_limits<double>::infinity();
    double logdet = 0.0;
    for (int p = 0; p < W.rows(); ++p) logdet += 2.0 * std::log(Lc(p, p).real());
    double v = -t * trace_product(C, W) - std::log(sP) - logdet;
    if (with_sense) v -= std::log(sA);
    return v;
  }
};

SdpSolution solve_top_eigenspace(const SdpProblem& p, const numerics::EigenDecomposition& ea) {
  // Gain at the bound forces W onto the top eigenspace of A with full power.
  const int n = static_cast<int>(ea.values.size());
  int r = 1;
  while (r < n && ea.values[r] >= ea.values[0] * (1.0 - 1e-9)) ++r;
  const ComplexMatrix U = ea.vectors.leftCols(r);
  const ComplexMatrix Cr = numerics::hermitian_part(U.adjoint() * p.C * U);
  const auto [lam, x] = numerics::dominant_eigenpair(Cr);
  const ComplexVector w = U * x;
  SdpSolution s;
  s.W.W = p.P_max * (w * w.adjoint());
  s.objective = p.P_max * lam;
  s.gap = 0.0;
  return s;
}

// Rank-one candidate from the dual side: the top eigenvector v of C + mu A
// at the smallest mu with P v^H A v >= gamma. Where the top eigenvalue is
// simple this is the optimum, and P lmax(C + mu A) - mu gamma bounds it from
// above. The barrier path loses digits when the sensing slack is tiny, so
// this is used to polish its answer.
struct DualPolish {
  ComplexMatrix W;
  double objective = 0.0;
  double upper = 0.0;
};

DualPolish dual_polish(const SdpProblem& p, double mu_scale) {
  const ComplexMatrix C = numerics::hermitian_part(p.C);
  const ComplexMatrix A = numerics::hermitian_part(p.A_sense);
  auto top = [&](double mu) { return numerics::dominant_eigenpair(numerics::hermitian_part(C + mu * A)); };
  auto gain = [&](const ComplexVector& v) { return p.P_max * (v.adjoint() * A * v)(0, 0).real(); };

  double mu = 0.0;
  auto [lam, v] = top(0.0);
  if (p.gamma_th > 0.0 && gain(v) < p.gamma_th) {
    double lo = 0.0, hi = mu_scale;
    for (int i = 0; i < 2000; ++i, hi *= 2) {
      std::tie(lam, v) = top(hi);
      if (gain(v) >= p.gamma_th) break;
      lo = hi;
    }
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
      const double mid = 0.5 * (lo + hi);
      const auto [lm, vm] = top(mid);
      if (gain(vm) >= p.gamma_th) {
        hi = mid;
        lam = lm;
        v = vm;
      } else {
        lo = mid;
      }
    }
    mu = hi;
  }
  DualPolish d;
  d.W = p.P_max * (v * v.adjoint());
  d.objective = trace_product(C, d.W);
  d.upper = p.P_max * lam - mu * p.gamma_th;
  if (gain(v) < p.gamma_th) d.objective = -std::numeric_limits<double>::infinity();
  return d;
}

}  // namespace

double feasibility_bound(const ComplexMatrix& A_sense, double P_max) {
  if (A_sense.size() == 0) return 0.0;
  return P_max * std::max(0.0, lambda_max(A_sense));
}

ComplexMatrix sca_gradient(const ComplexMatrix& W, std::span<const ComplexMatrix> Q, double sigma2) {
  ComplexMatrix g = ComplexMatrix::Zero(W.rows(), W.cols());
  for (const auto& q : Q) g += q / ((trace_product(W, q) + sigma2) * std::log(2.0));
  return g;
}

SdpSolution solve_linear_sdp(const SdpProblem& p, const SdpOptions& opts) {
  const int n = static_cast<int>(p.C.rows());
  if (n == 0 || p.C.cols() != n || p.A_sense.rows() != n || p.A_sense.cols() != n)
    throw InvalidConfig("solve_linear_sdp: C and A_sense must be square and of equal size");
  if (!numerics::is_hermitian(p.C)) throw NonHermitianInput("solve_linear_sdp: C is not Hermitian");
  if (!numerics::is_psd(p.A_sense)) throw NonPSDCovariance("solve_linear_sdp: A_sense is not PSD");
  if (!(p.P_max > 0.0) || !(p.gamma_th >= 0.0))
    throw InvalidConfig("solve_linear_sdp: need P_max > 0 and gamma_th >= 0");

  const auto ea = numerics::hermitian_eig(numerics::hermitian_part(p.A_sense));
  const double lam_a = std::max(0.0, ea.values[0]);
  const double bound = p.P_max * lam_a;
  const bool with_sense = p.gamma_th > 0.0;
  if (with_sense && bound < p.gamma_th)
    throw Infeasible("sensing threshold above P_max * lambda_max(A_sense) = " + std::to_string(bound),
                     bound, p.gamma_th);
  if (with_sense && p.gamma_th >= bound * (1.0 - 1e-9)) return solve_top_eigenspace(p, ea);

  const double c_norm = numerics::frobenius_norm(p.C);
  const ComplexMatrix A = with_sense ? ComplexMatrix(numerics::hermitian_part(p.A_sense) / lam_a)
                                     : ComplexMatrix::Zero(n, n);
  const double gamma = with_sense ? p.gamma_th / bound : 0.0;

  // Strictly feasible start: mass on the top eigenvector of A plus a little
  // identity, total trace below one.
  ComplexMatrix W;
  if (with_sense) {
    const ComplexVector v = ea.vectors.col(0);
    const double theta = 0.5 * (gamma + 1.0);
    const double eps = (1.0 - theta) / (2.0 * n);
    W = theta * (v * v.adjoint()) + eps * ComplexMatrix::Identity(n, n);
  } else {
    W = ComplexMatrix::Identity(n, n) / (2.0 * n);
  }

  if (c_norm == 0.0) {
    SdpSolution s;
    s.W.W = W * p.P_max;
    return s;
  }
  const ComplexMatrix C = numerics::hermitian_part(p.C) / c_norm;

  const Barrier barrier{C, A, gamma, with_sense};
  const double m = n + 1 + (with_sense ? 1 : 0);
  const ComplexMatrix I = ComplexMatrix::Identity(n, n);

  // Newton steps are taken in X with W = Lc X Lc^H (Lc the Cholesky factor
  // of the current iterate). At X = I the log det Hessian is the identity,
  // so the full Hessian is identity plus rank two and the step follows from
  // a 2 x 2 solve. This stays well conditioned as W turns rank deficient.
  double t = 1.0;
  int newton = 0;
  ComplexMatrix Lc;
  for (;;) {
    for (;;) {
      double sA, sP;
      barrier.slacks(W, sA, sP);
      if (!numerics::cholesky(W, Lc)) throw NoConvergence("solve_linear_sdp: iterate left the PSD cone");
      const ComplexMatrix Lh = Lc.adjoint();
      const ComplexMatrix Ct = Lh * C * Lc;
      const ComplexMatrix It = Lh * Lc;
      ComplexMatrix G = -t * Ct + It / sP - I;
      ComplexMatrix U[2] = {with_sense ? ComplexMatrix(Lh * A * Lc / sA) : ComplexMatrix::Zero(n, n), It / sP};
      if (with_sense) G -= U[0];
      // (I + U U^T)^{-1} G by Woodbury
      Eigen::Matrix2d M = Eigen::Matrix2d::Identity();
      Eigen::Vector2d ug;
      for (int i = 0; i < 2; ++i) {
        ug[i] = trace_product(U[i], G);
        for (int j = 0; j < 2; ++j) M(i, j) += trace_product(U[i], U[j]);
      }
      const Eigen::Vector2d y = M.ldlt().solve(ug);
      const ComplexMatrix dX = -(G - y[0] * U[0] - y[1] * U[1]);
      const double decrement = -trace_product(G, dX);
      // a nonpositive decrement is roundoff once a slack nears 1e-8
      if (!(decrement > 2e-9)) break;
      if (++newton > opts.max_newton_iterations)
        throw NoConvergence("solve_linear_sdp: Newton iteration cap reached");

      const ComplexMatrix D = numerics::hermitian_part(Lc * dX * Lh);
      const double f0 = barrier.value(W, t);
      double step = 1.0;
      bool moved = false;
      for (int bt = 0; bt < 60; ++bt, step *= 0.5) {
        const ComplexMatrix trial = W + step * D;
        if (barrier.value(trial, t) <= f0 - 0.01 * step * decrement) {
          moved = (step * D).norm() > 1e-14 * W.norm();
          W = numerics::hermitian_part(trial);
          break;
        }
      }
      // no descent left at this precision: treat as centred
      if (!moved) break;
    }
    const double obj = trace_product(C, W);
    if (m / t <= opts.gap_tolerance * (1.0 + std::abs(obj))) break;
    t *= opts.barrier_growth;
  }

  SdpSolution s;
  s.W.W = W * p.P_max;
  s.objective = trace_product(p.C, s.W.W);
  s.gap = m / t * c_norm * p.P_max;
  s.newton_iterations = newton;

  const DualPolish d = dual_polish(p, c_norm / lam_a);
  if (d.objective > s.objective && d.W.trace().real() <= p.P_max * (1.0 + 1e-12)) {
    s.W.W = d.W;
    s.objective = d.objective;
    s.gap = std::max(0.0, d.upper - d.objective);
  }
  return s;
}

}  // namespace riscom
