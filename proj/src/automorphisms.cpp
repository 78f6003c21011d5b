// automorphisms.cpp: unitary rotations, Moebius involutions, composite
// automorphisms with probe-validated inverses, and the Poincare-Bergman
// distance on scalar points.
#include "ncball/automorphisms.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "ncball/errors.hpp"
#include "ncball/rng.hpp"

namespace ncball {
namespace {

constexpr double kUnitaryTol = 1e-10;
constexpr double kProbeTol = 1e-9;

void check_unitary(const ComplexMatrix& U) {
  if (U.rows() != U.cols()) {
    throw NotUnitary("rotation matrix must be square");
  }
  const ComplexMatrix gram = U.adjoint() * U;
  const Eigen::Index n = U.rows();
  if (op_norm(gram - ComplexMatrix::Identity(n, n)) > kUnitaryTol) {
    throw NotUnitary("rotation matrix is not unitary within 1e-10");
  }
}

OperatorTuple scalar_point_tuple(const ComplexVector& z) {
  std::vector<Complex> entries(z.data(), z.data() + z.size());
  return scalar_tuple(entries);
}

}  // namespace

OperatorTuple psi_unitary(const ComplexMatrix& U, const OperatorTuple& X) {
  check_unitary(U);
  if (U.rows() != X.n) {
    throw ArityMismatch("rotation size must match the tuple arity");
  }
  std::vector<ComplexMatrix> Y(static_cast<std::size_t>(X.n),
                               ComplexMatrix::Zero(X.d, X.d));
  for (int j = 0; j < X.n; ++j) {
    for (int i = 0; i < X.n; ++i) {
      Y[j] += U(i, j) * X.X[i];
    }
  }
  return OperatorTuple(X.n, X.d, std::move(Y));
}

OperatorTuple psi_lambda(const ComplexVector& lambda, const OperatorTuple& X) {
  const int n = static_cast<int>(lambda.size());
  if (n != X.n) {
    throw ArityMismatch("scalar point size must match the tuple arity");
  }
  const double lnorm = lambda.norm();
  if (!(lnorm < 1.0)) {
    throw OutsideBall("scalar point must have Euclidean norm < 1");
  }
  const double scalar_defect = std::sqrt(1.0 - lnorm * lnorm);
  const ComplexMatrix point_defect =
      psd_sqrt(ComplexMatrix::Identity(n, n) -
               lambda.conjugate() * lambda.transpose());

  const int d = X.d;
  ComplexMatrix resolvent = ComplexMatrix::Identity(d, d);
  for (int i = 0; i < n; ++i) {
    resolvent -= std::conj(lambda(i)) * X.X[i];
  }
  ComplexMatrix resolvent_inv;
  try {
    resolvent_inv = inverse(resolvent);
  } catch (const Singular&) {
    throw ResolventSingular(
        "I - <lambda, X> is singular; the tuple lies outside the closed ball");
  }

  std::vector<ComplexMatrix> Y;
  Y.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    ComplexMatrix mixed = ComplexMatrix::Zero(d, d);
    for (int i = 0; i < n; ++i) {
      mixed += X.X[i] * point_defect(i, j);
    }
    Y.push_back(lambda(j) * ComplexMatrix::Identity(d, d) -
                scalar_defect * (resolvent_inv * mixed));
  }
  return OperatorTuple(n, d, std::move(Y));
}

OperatorTuple apply(const BallAutomorphism& a, const OperatorTuple& X) {
  if (a.U.rows() != a.lambda.size()) {
    throw ArityMismatch("rotation size must match the scalar point size");
  }
  return psi_unitary(a.U, psi_lambda(a.lambda, X));
}

BallAutomorphism invert(const BallAutomorphism& a) {
  if (a.U.rows() != a.lambda.size()) {
    throw ArityMismatch("rotation size must match the scalar point size");
  }
  check_unitary(a.U);
  BallAutomorphism inv;
  inv.U = a.U.adjoint();
  inv.lambda = (a.lambda.transpose() * a.U).transpose();

  const int n = static_cast<int>(a.lambda.size());
  std::vector<OperatorTuple> probes;
  probes.push_back(zero_tuple(n, 1));
  probes.push_back(random_tuple(n, 1, 0.6, 0xA1));
  probes.push_back(random_tuple(n, 2, 0.7, 0xA2));
  for (const OperatorTuple& P : probes) {
    const OperatorTuple round_trip = apply(inv, apply(a, P));
    for (int i = 0; i < n; ++i) {
      if (!((round_trip.X[i] - P.X[i]).norm() <= kProbeTol)) {
        throw InversionProbeFailed(
            "inverse parametrization failed the round-trip probe");
      }
    }
  }
  return inv;
}

std::vector<ComplexVector> delta_circle(const ComplexVector& center,
                                        double rho, int samples) {
  if (center.size() != 2) {
    throw BadDim("delta circles are drawn in the two-variable scalar ball");
  }
  if (!(center.norm() < 1.0)) {
    throw OutsideBall("circle center must have Euclidean norm < 1");
  }
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw Error("circle radius must be positive and finite");
  }
  // beta steepens like e^{2 rho} toward the boundary, so beyond 8 the
  // 1e-8 placement guarantee is not representable in double precision.
  if (rho > 8.0) {
    throw Error("circle radius must be at most 8");
  }
  if (samples < 1) {
    throw Error("need at least one sample");
  }
  std::vector<ComplexVector> points;
  points.reserve(static_cast<std::size_t>(samples));
  const double pi = std::acos(-1.0);
  for (int t = 0; t < samples; ++t) {
    const double angle = 2.0 * pi * static_cast<double>(t) /
                         static_cast<double>(samples);
    ComplexVector direction(2);
    direction << Complex(std::cos(angle), 0.0), Complex(std::sin(angle), 0.0);
    // The ray leaves the closed ball where |center + s * direction| = 1.
    const double b = (center.adjoint() * direction).value().real();
    const double c = center.squaredNorm() - 1.0;
    const double s_edge = -b + std::sqrt(b * b - c);
    double lo = 0.0;
    double hi = s_edge * (1.0 - 1e-12);
    // Hyperbolic balls around the center are convex and nested, so beta is
    // increasing along the ray and the bisection bracket stays valid.
    for (int step = 0; step < 200; ++step) {
      const double s = 0.5 * (lo + hi);
      if (poincare_bergman(center, center + s * direction) < rho) {
        lo = s;
      } else {
        hi = s;
      }
      if (hi - lo <= 1e-14 * s_edge) {
        break;
      }
    }
    points.push_back(center + 0.5 * (lo + hi) * direction);
  }
  return points;
}

double poincare_bergman(const ComplexVector& z, const ComplexVector& w) {
  if (z.size() != w.size()) {
    throw ArityMismatch("scalar points must have the same size");
  }
  if (!(z.norm() < 1.0) || !(w.norm() < 1.0)) {
    throw OutsideBall("scalar points must have Euclidean norm < 1");
  }
  const OperatorTuple image = psi_lambda(z, scalar_point_tuple(w));
  double moved = 0.0;
  for (const ComplexMatrix& entry : image.X) {
    moved += std::norm(entry(0, 0));
  }
  const double s = std::sqrt(moved);
  return 0.5 * std::log((1.0 + s) / (1.0 - s));
}

}  // namespace ncball
