// Tests for the ball automorphisms: unitary rotations, Moebius involutions,
// composite maps with probe-validated inverses, metric invariance and the
// Poincare-Bergman distance.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "ncball/automorphisms.hpp"
#include "ncball/errors.hpp"
#include "ncball/linalg.hpp"
#include "ncball/metrics.hpp"
#include "ncball/rng.hpp"
#include "ncball/tuples.hpp"

using namespace ncball;

namespace {

const double kLog2 = 0.6931471805599453;

ComplexMatrix random_unitary(int n, std::uint64_t seed) {
  Rng rng = Rng::split(seed, 0x726f74617465ULL);
  const ComplexMatrix G = rng.gaussian_matrix(n, n);
  Eigen::HouseholderQR<ComplexMatrix> qr(G);
  return qr.householderQ() * ComplexMatrix::Identity(n, n);
}

ComplexVector point2(Complex a, Complex b) {
  ComplexVector z(2);
  z << a, b;
  return z;
}

double tuple_gap(const OperatorTuple& A, const OperatorTuple& B) {
  double worst = 0.0;
  for (int i = 0; i < A.n; ++i) {
    worst = std::max(worst, (A.X[i] - B.X[i]).norm());
  }
  return worst;
}

MetricOptions coarse() {
  MetricOptions o;
  o.tol = 0.05;
  o.m_max = 6;
  return o;
}

}  // namespace

TEST_CASE("psi_unitary rotates components and preserves the row norm") {
  const OperatorTuple X = random_tuple(2, 3, 0.8, 11);

  SUBCASE("identity rotation is the identity map") {
    const OperatorTuple Y = psi_unitary(identity(2), X);
    CHECK(tuple_gap(X, Y) == 0.0);
  }

  SUBCASE("coordinate swap permutes the components") {
    ComplexMatrix S = ComplexMatrix::Zero(2, 2);
    S(0, 1) = 1.0;
    S(1, 0) = 1.0;
    const OperatorTuple Y = psi_unitary(S, X);
    CHECK((Y.X[0] - X.X[1]).norm() == 0.0);
    CHECK((Y.X[1] - X.X[0]).norm() == 0.0);
  }

  SUBCASE("row norm is invariant under random unitaries") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const ComplexMatrix U = random_unitary(2, seed);
      const OperatorTuple Y = psi_unitary(U, X);
      CHECK(std::abs(row_norm(Y) - row_norm(X)) <= 1e-12);
    }
  }

  SUBCASE("non-unitary rotations are rejected") {
    ComplexMatrix M = identity(2);
    M(0, 1) = 0.1;
    CHECK_THROWS_AS(psi_unitary(M, X), NotUnitary);
    CHECK_THROWS_AS(psi_unitary(ComplexMatrix::Zero(2, 3), X), NotUnitary);
  }

  SUBCASE("size mismatch is rejected") {
    CHECK_THROWS_AS(psi_unitary(identity(3), X), ArityMismatch);
  }
}

TEST_CASE("psi_lambda matches the scalar Moebius map") {
  ComplexVector lambda(1);
  lambda << 0.5;
  ComplexMatrix x(1, 1);
  x(0, 0) = 0.25;
  const OperatorTuple Y = psi_lambda(lambda, OperatorTuple(1, 1, {x}));
  CHECK(std::abs(Y.X[0](0, 0) - Complex(2.0 / 7.0)) <= 1e-15);
}

TEST_CASE("psi_lambda fixes the defining point pair") {
  const ComplexVector lambda = point2(Complex(0.3, 0.1), Complex(-0.2, 0.25));

  SUBCASE("the origin maps to lambda I") {
    const OperatorTuple Y = psi_lambda(lambda, zero_tuple(2, 3));
    for (int j = 0; j < 2; ++j) {
      CHECK((Y.X[j] - lambda(j) * identity(3)).norm() <= 1e-15);
    }
  }

  SUBCASE("lambda I maps to the origin") {
    std::vector<ComplexMatrix> xs;
    for (int j = 0; j < 2; ++j) {
      xs.push_back(lambda(j) * identity(3));
    }
    const OperatorTuple Y = psi_lambda(lambda, OperatorTuple(2, 3, xs));
    CHECK(tuple_gap(Y, zero_tuple(2, 3)) <= 1e-14);
  }
}

TEST_CASE("psi_lambda is an involution") {
  const ComplexVector lambda = point2(Complex(0.35, -0.1), Complex(0.2, 0.15));
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const OperatorTuple X = random_tuple(2, 2, 0.85, 20 + seed);
    const OperatorTuple Y = psi_lambda(lambda, psi_lambda(lambda, X));
    CHECK(tuple_gap(X, Y) <= 1e-9);
  }
}

TEST_CASE("psi_lambda maps the open ball into the open ball") {
  const ComplexVector lambda = point2(Complex(0.4, 0.2), Complex(-0.1, 0.3));
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const double target = 0.05 + 0.94 * static_cast<double>(seed) / 99.0;
    const OperatorTuple X = random_tuple(2, 2, target, 300 + seed);
    CHECK(row_norm(psi_lambda(lambda, X)) < 1.0);
  }
}

TEST_CASE("psi_lambda validates its inputs") {
  SUBCASE("scalar points outside the ball are rejected") {
    ComplexVector lambda(1);
    lambda << 1.0;
    CHECK_THROWS_AS(psi_lambda(lambda, zero_tuple(1, 2)), OutsideBall);
  }

  SUBCASE("arity mismatch is rejected") {
    ComplexVector lambda(2);
    lambda << 0.1, 0.2;
    CHECK_THROWS_AS(psi_lambda(lambda, zero_tuple(1, 2)), ArityMismatch);
  }

  SUBCASE("the resolvent can only degenerate outside the closed ball") {
    ComplexVector lambda(1);
    lambda << 0.5;
    CHECK_THROWS_AS(psi_lambda(lambda, scalar_tuple({Complex(2.0)})),
                    ResolventSingular);
    CHECK_NOTHROW(psi_lambda(lambda, scalar_tuple({Complex(1.0)})));
  }
}

TEST_CASE("invert produces a two-sided inverse") {
  BallAutomorphism a;
  a.U = random_unitary(2, 5);
  a.lambda = point2(Complex(0.3, 0.0), Complex(0.1, -0.2));
  const BallAutomorphism inv = invert(a);

  SUBCASE("round trips on fresh tuples") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const OperatorTuple X = random_tuple(2, 3, 0.8, 40 + seed);
      CHECK(tuple_gap(apply(inv, apply(a, X)), X) <= 1e-9);
      CHECK(tuple_gap(apply(a, apply(inv, X)), X) <= 1e-9);
    }
  }

  SUBCASE("the identity automorphism is its own inverse") {
    BallAutomorphism id;
    id.U = identity(2);
    id.lambda = ComplexVector::Zero(2);
    const BallAutomorphism id_inv = invert(id);
    CHECK((id_inv.U - identity(2)).norm() == 0.0);
    CHECK(id_inv.lambda.norm() == 0.0);
  }

  SUBCASE("invalid parameters are rejected before probing") {
    BallAutomorphism bad;
    bad.U = identity(2);
    bad.lambda = point2(Complex(0.9, 0.0), Complex(0.9, 0.0));
    CHECK_THROWS_AS(invert(bad), OutsideBall);
    bad.lambda = ComplexVector::Zero(3);
    CHECK_THROWS_AS(invert(bad), ArityMismatch);
  }
}

TEST_CASE("apply composes the rotation after the Moebius map") {
  BallAutomorphism a;
  a.U = random_unitary(2, 9);
  a.lambda = point2(Complex(0.25, 0.1), Complex(-0.15, 0.05));
  const OperatorTuple X = random_tuple(2, 2, 0.7, 55);
  const OperatorTuple direct = apply(a, X);
  const OperatorTuple staged = psi_unitary(a.U, psi_lambda(a.lambda, X));
  CHECK(tuple_gap(direct, staged) == 0.0);
  CHECK(row_norm(direct) < 1.0);
}

TEST_CASE("poincare_bergman matches the classical distance") {
  SUBCASE("distance to self vanishes") {
    const ComplexVector z = point2(Complex(0.3, 0.2), Complex(-0.1, 0.4));
    CHECK(poincare_bergman(z, z) <= 1e-15);
  }

  SUBCASE("distance from (0.6, 0) to the origin is log 2") {
    const ComplexVector z = point2(Complex(0.6, 0.0), Complex(0.0, 0.0));
    const ComplexVector w = ComplexVector::Zero(2);
    CHECK(poincare_bergman(z, w) == doctest::Approx(kLog2).epsilon(1e-14));
  }

  SUBCASE("symmetric in its arguments") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      Rng rng = Rng::split(seed, 0x706f696e7473ULL);
      ComplexVector z = 0.4 * rng.gaussian_matrix(2, 1).col(0);
      ComplexVector w = 0.4 * rng.gaussian_matrix(2, 1).col(0);
      if (z.norm() >= 1.0 || w.norm() >= 1.0) {
        continue;
      }
      CHECK(std::abs(poincare_bergman(z, w) - poincare_bergman(w, z)) <=
            1e-12);
    }
  }

  SUBCASE("points outside the ball are rejected") {
    const ComplexVector z = point2(Complex(0.5, 0.0), Complex(0.0, 0.0));
    const ComplexVector far = point2(Complex(1.2, 0.0), Complex(0.0, 0.0));
    CHECK_THROWS_AS(poincare_bergman(z, far), OutsideBall);
    CHECK_THROWS_AS(poincare_bergman(far, z), OutsideBall);
    ComplexVector w(1);
    w << 0.1;
    CHECK_THROWS_AS(poincare_bergman(z, w), ArityMismatch);
  }
}

TEST_CASE("delta_circle places points at the requested distance") {
  SUBCASE("around the origin the circle is Euclidean with radius tanh(rho)") {
    const ComplexVector center = ComplexVector::Zero(2);
    const double rho = 0.8;
    const std::vector<ComplexVector> pts = delta_circle(center, rho, 12);
    REQUIRE(pts.size() == 12);
    for (const ComplexVector& w : pts) {
      CHECK(std::abs(w.norm() - std::tanh(rho)) <= 1e-9);
      CHECK(std::abs(poincare_bergman(center, w) - rho) <= 1e-8);
    }
  }

  SUBCASE("off-center circles still achieve the distance") {
    const ComplexVector center = point2(Complex(0.4, 0.1), Complex(-0.2, 0.3));
    for (double rho : {0.3, 1.5, 4.0}) {
      for (const ComplexVector& w : delta_circle(center, rho, 8)) {
        CHECK(w.norm() < 1.0);
        CHECK(std::abs(poincare_bergman(center, w) - rho) <= 1e-8);
      }
    }
  }

  SUBCASE("invalid requests are rejected") {
    const ComplexVector center = ComplexVector::Zero(2);
    CHECK_THROWS_AS(delta_circle(center, -1.0, 4), Error);
    CHECK_THROWS_AS(delta_circle(center, 9.0, 4), Error);
    CHECK_THROWS_AS(delta_circle(center, 0.5, 0), Error);
    CHECK_THROWS_AS(delta_circle(ComplexVector::Zero(3), 0.5, 4), BadDim);
    ComplexVector far(2);
    far << 1.5, 0.0;
    CHECK_THROWS_AS(delta_circle(far, 0.5, 4), OutsideBall);
  }
}

TEST_CASE("hyperbolic metric agrees with poincare_bergman on scalar points") {
  SUBCASE("one variable") {
    const OperatorTuple A = scalar_tuple({Complex(0.5)});
    const OperatorTuple B = scalar_tuple({Complex(0.25)});
    const Enclosure e = delta(A, B, MetricOptions{});
    ComplexVector z(1), w(1);
    z << 0.5;
    w << 0.25;
    const double beta = poincare_bergman(z, w);
    CHECK(e.lower <= beta + 1e-12);
    CHECK(beta <= e.upper + 1e-12);
    CHECK(std::abs(e.mid() - beta) <= e.width() + 1e-9);
  }

  SUBCASE("two variables, collinear points") {
    const OperatorTuple A = scalar_tuple({Complex(0.6), Complex(0.0)});
    const OperatorTuple B = scalar_tuple({Complex(0.3), Complex(0.0)});
    const Enclosure e = delta(A, B, MetricOptions{});
    const ComplexVector z = point2(Complex(0.6, 0.0), Complex(0.0, 0.0));
    const ComplexVector w = point2(Complex(0.3, 0.0), Complex(0.0, 0.0));
    const double beta = poincare_bergman(z, w);
    CHECK(e.lower <= beta + 1e-12);
    CHECK(beta <= e.upper + 1e-12);
    CHECK(std::abs(e.mid() - beta) <= e.width() + 1e-9);
  }
}

TEST_CASE("automorphisms leave the hyperbolic metric invariant") {
  BallAutomorphism a;
  a.U = random_unitary(2, 13);
  a.lambda = point2(Complex(0.2, 0.1), Complex(-0.25, 0.05));

  SUBCASE("scalar pair") {
    const OperatorTuple A = scalar_tuple({Complex(0.5), Complex(0.0)});
    const OperatorTuple B = scalar_tuple({Complex(0.25), Complex(0.0)});
    const Enclosure before = delta(A, B, coarse());
    const Enclosure after = delta(apply(a, A), apply(a, B), coarse());
    CHECK(std::abs(after.mid() - before.mid()) <=
          std::max(before.width(), after.width()) + 1e-6);
  }

  SUBCASE("matrix pair") {
    const OperatorTuple A = random_tuple(2, 2, 0.45, 61);
    const OperatorTuple B = random_tuple(2, 2, 0.4, 62);
    const Enclosure before = delta(A, B, coarse());
    const Enclosure after = delta(apply(a, A), apply(a, B), coarse());
    CHECK(std::abs(after.mid() - before.mid()) <=
          std::max(before.width(), after.width()) + 1e-6);
  }
}
