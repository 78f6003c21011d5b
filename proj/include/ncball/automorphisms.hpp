// automorphisms.hpp: free holomorphic automorphisms of the ball. Unitary
// rotations, involutive Moebius maps indexed by scalar points, their
// compositions and probe-validated inverses, and the classical
// Poincare-Bergman distance between scalar points.
#pragma once

#include <vector>

#include "ncball/linalg.hpp"
#include "ncball/tuples.hpp"

namespace ncball {

// Composite automorphism applied as X -> psi_unitary(U, psi_lambda(lambda, X)).
struct BallAutomorphism {
  ComplexMatrix U;       // n x n unitary
  ComplexVector lambda;  // scalar point, |lambda|_2 < 1
};

// X'_j = sum_i U_ij X_i; preserves the row norm. NotUnitary when U*U != I
// within 1e-10, ArityMismatch when the sizes disagree.
OperatorTuple psi_unitary(const ComplexMatrix& U, const OperatorTuple& X);

// The involutive Moebius map: with the scalar defect d = (1 - |lambda|^2)^{1/2}
// and the matrix defect D = psd_sqrt(I_n - lambda* lambda),
//   psi_lambda(X)_j = lambda_j I - d (I - sum_i conj(lambda_i) X_i)^{-1}
//                     sum_i X_i D_ij.
// Fixes psi(0) = lambda I and psi(lambda I) = 0; maps the closed ball into
// itself. OutsideBall when |lambda|_2 >= 1; ResolventSingular only for
// tuples outside the closed ball.
OperatorTuple psi_lambda(const ComplexVector& lambda, const OperatorTuple& X);

OperatorTuple apply(const BallAutomorphism& a, const OperatorTuple& X);

// Inverse in the same (U, lambda) form: U' = U*, lambda' = lambda U. The
// parametrization is validated on probe tuples at construction;
// InversionProbeFailed if the round trip ever exceeds 1e-9.
BallAutomorphism invert(const BallAutomorphism& a);

// beta(z, w) = (1/2) ln (1 + s)/(1 - s) with s = |psi_z(w)|_2, computed by
// running psi_lambda on the scalar tuple of w. OutsideBall when either
// point has |.|_2 >= 1.
double poincare_bergman(const ComplexVector& z, const ComplexVector& w);

// Points w on the circle {beta(center, w) = rho} in the two-variable scalar
// ball, one per direction (cos t, sin t), each found by bisection along the
// ray from the center. Every returned point satisfies
// |poincare_bergman(center, w) - rho| <= 1e-8.
std::vector<ComplexVector> delta_circle(const ComplexVector& center,
                                        double rho, int samples);

}  // namespace ncball
