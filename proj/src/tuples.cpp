#include "ncball/tuples.hpp"

#include <cmath>
#include <string>

#include "ncball/rng.hpp"

namespace ncball {

OperatorTuple::OperatorTuple(int n_, int d_, std::vector<ComplexMatrix> X_)
    : n(n_), d(d_), X(std::move(X_)) {
  if (n < 1 || static_cast<int>(X.size()) != n)
    throw Error("tuple needs n matrices");
  for (const auto& M : X)
    if (M.rows() != d || M.cols() != d)
      throw Error("tuple entries must all be d x d");
}

OperatorTuple zero_tuple(int n, int d) {
  std::vector<ComplexMatrix> X(static_cast<std::size_t>(n),
                               ComplexMatrix::Zero(d, d));
  return OperatorTuple(n, d, std::move(X));
}

OperatorTuple scalar_tuple(const std::vector<Complex>& z) {
  std::vector<ComplexMatrix> X;
  X.reserve(z.size());
  for (Complex zi : z) {
    ComplexMatrix M(1, 1);
    M(0, 0) = zi;
    X.push_back(M);
  }
  return OperatorTuple(static_cast<int>(z.size()), 1, std::move(X));
}

OperatorTuple scaled(const OperatorTuple& X, double r) {
  OperatorTuple Y = X;
  for (auto& M : Y.X) M *= r;
  return Y;
}

ComplexMatrix cp_apply(const OperatorTuple& X, const ComplexMatrix& Y) {
  ComplexMatrix out = ComplexMatrix::Zero(X.d, X.d);
  for (const auto& Xi : X.X) out += Xi * Y * Xi.adjoint();
  return out;
}

ComplexMatrix row_sum(const OperatorTuple& X) {
  ComplexMatrix S = ComplexMatrix::Zero(X.d, X.d);
  for (const auto& Xi : X.X) S += Xi * Xi.adjoint();
  return S;
}

double row_norm(const OperatorTuple& X) {
  ComplexMatrix S = row_sum(X);
  auto [lam, U] = herm_eig(S);
  return std::sqrt(std::max(0.0, lam(lam.size() - 1)));
}

ComplexMatrix defect(const OperatorTuple& X) {
  return psd_sqrt(identity(X.d) - row_sum(X));
}

JsrEstimate joint_spectral_radius(const OperatorTuple& X, int kmax,
                                  double jsr_tol) {
  if (kmax < 4) throw Error("joint_spectral_radius needs kmax >= 4");
  JsrEstimate est{0.0, 0, false, {0.0, 0.0, 0.0}};
  ComplexMatrix Y = identity(X.d);
  double log_scale = 0.0;
  double prev1 = -1.0, prev2 = -1.0;
  for (int k = 1; k <= kmax; ++k) {
    Y = cp_apply(X, Y);
    Y = 0.5 * (Y + ComplexMatrix(Y.adjoint()));
    auto [lam, U] = herm_eig(Y);
    const double norm = std::max(0.0, lam(lam.size() - 1));
    if (norm == 0.0) {
      // Phi^k(I) vanished exactly, so every word of length k is zero.
      est.value = 0.0;
      est.k_used = k;
      est.converged = true;
      est.last_estimates = {0.0, 0.0, 0.0};
      return est;
    }
    const double rk = std::exp((std::log(norm) + log_scale) / (2.0 * k));
    est.value = rk;
    est.k_used = k;
    est.last_estimates = {prev2, prev1, rk};
    if (k >= 4 && prev1 >= 0.0 && prev2 >= 0.0 &&
        std::abs(rk - prev1) <= jsr_tol && std::abs(rk - prev2) <= jsr_tol) {
      est.converged = true;
      return est;
    }
    prev2 = prev1;
    prev1 = rk;
    log_scale += std::log(norm);
    Y /= norm;
  }
  return est;
}

BallMembership classify(const OperatorTuple& X, double boundary_tol) {
  const double rn = row_norm(X);
  JsrEstimate jsr = joint_spectral_radius(X);
  BallMembership mem{BallRegion::OpenBall, rn, jsr.value};
  if (rn > 1.0 + boundary_tol) {
    mem.tag = BallRegion::Outside;
  } else if (rn < 1.0 - boundary_tol) {
    mem.tag = BallRegion::OpenBall;
  } else if (jsr.value < 1.0 - boundary_tol) {
    // The estimate dominates the true radius, so this certifies r(X) < 1.
    mem.tag = BallRegion::SpectralInterior;
  } else {
    mem.tag = BallRegion::ClosedBallBoundary;
  }
  return mem;
}

OperatorTuple random_tuple(int n, int d, double target_row_norm,
                           std::uint64_t seed) {
  if (!(target_row_norm > 0.0 && target_row_norm < 1.0))
    throw BadTarget("target row norm must lie in (0, 1), got " +
                    std::to_string(target_row_norm));
  Rng rng = Rng::split(seed, 0x7475706C65ULL);  // per-call stream
  std::vector<ComplexMatrix> X;
  X.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) X.push_back(rng.gaussian_matrix(d, d));
  OperatorTuple T(n, d, std::move(X));
  const double rn = row_norm(T);
  if (rn == 0.0) throw BadTarget("degenerate zero draw");
  return scaled(T, target_row_norm / rn);
}

}  // namespace ncball
