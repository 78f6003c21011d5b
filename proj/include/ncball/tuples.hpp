// tuples.hpp: points of the noncommutative ball. Matrix tuples, row norm,
// defect operators, joint spectral radius via the completely positive map
// Phi(Y) = sum_i X_i Y X_i^*, ball membership, seeded random generation.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ncball/linalg.hpp"

namespace ncball {

struct OperatorTuple {
  int n;  // number of matrices
  int d;  // common square dimension
  std::vector<ComplexMatrix> X;

  OperatorTuple() : n(0), d(0) {}
  OperatorTuple(int n_, int d_, std::vector<ComplexMatrix> X_);
};

OperatorTuple zero_tuple(int n, int d);
OperatorTuple scalar_tuple(const std::vector<Complex>& z);
OperatorTuple scaled(const OperatorTuple& X, double r);

// Sum_i X_i Y X_i^*, the completely positive map attached to the tuple.
ComplexMatrix cp_apply(const OperatorTuple& X, const ComplexMatrix& Y);

// Sum_i X_i X_i^*.
ComplexMatrix row_sum(const OperatorTuple& X);

// |sum_i X_i X_i^*|^{1/2}.
double row_norm(const OperatorTuple& X);

// Defect operator (I - sum_i X_i X_i^*)^{1/2}; NotPSD outside the closed ball.
ComplexMatrix defect(const OperatorTuple& X);

struct JsrEstimate {
  double value;
  int k_used;
  bool converged;
  std::array<double, 3> last_estimates;  // Gelfand-sequence diagnostics
};

// Upper estimates r_k = |Phi^k(I)|^{1/2k}; each r_k dominates the true joint
// spectral radius because |Phi^k(I)| is submultiplicative in k. Iterates are
// renormalized every step with the scale tracked in log space.
JsrEstimate joint_spectral_radius(const OperatorTuple& X, int kmax = 200,
                                  double jsr_tol = 1e-6);

enum class BallRegion { OpenBall, SpectralInterior, ClosedBallBoundary, Outside };

struct BallMembership {
  BallRegion tag;
  double row_norm;
  double spectral_radius;
};

BallMembership classify(const OperatorTuple& X, double boundary_tol = 1e-9);

// n independent complex Gaussian matrices rescaled to the requested row norm.
// Deterministic for fixed (n, d, target_row_norm, seed).
OperatorTuple random_tuple(int n, int d, double target_row_norm,
                           std::uint64_t seed);

}  // namespace ncball
