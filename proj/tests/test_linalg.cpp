#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ncball/linalg.hpp"
#include "ncball/rng.hpp"

using namespace ncball;

namespace {

// Householder QR of a Gaussian draw gives a deterministic random unitary.
ComplexMatrix random_unitary(Eigen::Index d, std::uint64_t seed) {
  Rng rng = Rng::split(seed, 17);
  ComplexMatrix G = rng.gaussian_matrix(d, d);
  Eigen::HouseholderQR<ComplexMatrix> qr(G);
  ComplexMatrix Q = qr.householderQ();
  return Q;
}

// Plain power iteration on M^* M, kept as an independent cross-check of the
// SVD-based operator norm.
double power_iteration_norm(const ComplexMatrix& M, int iters) {
  ComplexMatrix H = M.adjoint() * M;
  Rng rng = Rng::split(99, 1);
  ComplexVector v = rng.gaussian_matrix(H.rows(), 1);
  v.normalize();
  for (int i = 0; i < iters; ++i) {
    v = H * v;
    v.normalize();
  }
  const double rayleigh = std::real(Complex(v.adjoint() * (H * v)));
  return std::sqrt(std::max(0.0, rayleigh));
}

}  // namespace

TEST_CASE("op_norm on hand cases") {
  CHECK(op_norm(identity(5)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(op_norm(ComplexMatrix::Zero(3, 3)) == 0.0);

  ComplexMatrix N = ComplexMatrix::Zero(2, 2);
  N(0, 1) = 2.0;
  CHECK(op_norm(N) == doctest::Approx(2.0).epsilon(1e-14));

  // Singular values of [[1,1],[0,1]] are the golden ratio and its inverse.
  ComplexMatrix J = ComplexMatrix::Zero(2, 2);
  J(0, 0) = 1.0;
  J(0, 1) = 1.0;
  J(1, 1) = 1.0;
  CHECK(op_norm(J) == doctest::Approx(1.6180339887498949).epsilon(1e-14));

  ComplexMatrix empty(0, 0);
  CHECK(op_norm(empty) == 0.0);
}

TEST_CASE("herm_eig on hand cases") {
  ComplexMatrix D = ComplexMatrix::Zero(3, 3);
  D(0, 0) = 3.0;
  D(1, 1) = 1.0;
  D(2, 2) = 2.0;
  auto [lam, U] = herm_eig(D);
  CHECK(lam(0) == doctest::Approx(1.0));
  CHECK(lam(1) == doctest::Approx(2.0));
  CHECK(lam(2) == doctest::Approx(3.0));

  ComplexMatrix F = ComplexMatrix::Zero(2, 2);
  F(0, 1) = 1.0;
  F(1, 0) = 1.0;
  auto [mu, V] = herm_eig(F);
  CHECK(mu(0) == doctest::Approx(-1.0));
  CHECK(mu(1) == doctest::Approx(1.0));

  auto [one, W] = herm_eig(identity(4));
  for (int i = 0; i < 4; ++i) CHECK(one(i) == doctest::Approx(1.0));
}

TEST_CASE("herm_eig rejects non-Hermitian input") {
  ComplexMatrix N = ComplexMatrix::Zero(2, 2);
  N(0, 1) = 1.0;
  CHECK_THROWS_AS(herm_eig(N), NotHermitian);
  CHECK_THROWS_AS(herm_eig(ComplexMatrix::Zero(2, 3)), NotHermitian);
}

TEST_CASE("psd_sqrt on hand cases") {
  CHECK((psd_sqrt(identity(3)) - identity(3)).norm() < 1e-12);

  ComplexMatrix D = ComplexMatrix::Zero(2, 2);
  D(0, 0) = 4.0;
  D(1, 1) = 9.0;
  ComplexMatrix S = psd_sqrt(D);
  CHECK(std::abs(S(0, 0) - Complex(2.0)) < 1e-12);
  CHECK(std::abs(S(1, 1) - Complex(3.0)) < 1e-12);

  // Construct M = V diag(0.25, 0.81) V^*; its root must be V diag(0.5, 0.9) V^*.
  ComplexMatrix V = random_unitary(2, 5);
  RealVector ev(2);
  ev << 0.25, 0.81;
  ComplexMatrix M = V * ev.asDiagonal() * V.adjoint();
  RealVector rv(2);
  rv << 0.5, 0.9;
  ComplexMatrix expected = V * rv.asDiagonal() * V.adjoint();
  CHECK((psd_sqrt(M) - expected).norm() < 1e-12);
}

TEST_CASE("psd_sqrt clamps roundoff but rejects real negativity") {
  ComplexMatrix tiny = ComplexMatrix::Zero(2, 2);
  tiny(0, 0) = -1e-12;  // roundoff scale, clamped
  tiny(1, 1) = 1.0;
  ComplexMatrix S = psd_sqrt(tiny);
  CHECK(std::abs(S(0, 0)) < 1e-6);

  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = -0.5;
  neg(1, 1) = 1.0;
  CHECK_THROWS_AS(psd_sqrt(neg), NotPSD);
}

TEST_CASE("inverse on hand cases") {
  CHECK((inverse(identity(3)) - identity(3)).norm() < 1e-12);

  ComplexMatrix D = ComplexMatrix::Zero(2, 2);
  D(0, 0) = 2.0;
  D(1, 1) = 4.0;
  ComplexMatrix Di = inverse(D);
  CHECK(std::abs(Di(0, 0) - Complex(0.5)) < 1e-14);
  CHECK(std::abs(Di(1, 1) - Complex(0.25)) < 1e-14);

  ComplexMatrix T = identity(2);
  T(0, 1) = 0.5;
  ComplexMatrix Ti = inverse(T);
  CHECK(std::abs(Ti(0, 1) - Complex(-0.5)) < 1e-14);
  CHECK(std::abs(Ti(0, 0) - Complex(1.0)) < 1e-14);

  ComplexMatrix sing = ComplexMatrix::Zero(2, 2);
  sing(0, 0) = 1.0;
  CHECK_THROWS_AS(inverse(sing), Singular);
}

TEST_CASE("kron on hand cases") {
  CHECK((kron(identity(2), identity(3)) - identity(6)).norm() == 0.0);

  ComplexMatrix D = ComplexMatrix::Zero(2, 2);
  D(0, 0) = Complex(2.0, 1.0);
  D(1, 1) = Complex(-3.0, 0.0);
  ComplexMatrix K = kron(D, identity(2));
  CHECK(K(0, 0) == Complex(2.0, 1.0));
  CHECK(K(1, 1) == Complex(2.0, 1.0));
  CHECK(K(2, 2) == Complex(-3.0, 0.0));
  CHECK(K(3, 3) == Complex(-3.0, 0.0));

  ComplexMatrix N = ComplexMatrix::Zero(2, 2);
  N(0, 1) = 1.0;
  ComplexMatrix s(1, 1);
  s(0, 0) = 2.0;
  ComplexMatrix K2 = kron(N, s);
  CHECK(K2(0, 1) == Complex(2.0));
  CHECK(K2.cwiseAbs().sum() == doctest::Approx(2.0));
}

TEST_CASE("norm submultiplicativity and kron multiplicativity on random input") {
  for (std::uint64_t t = 0; t < 20; ++t) {
    Rng rng = Rng::split(42, t);
    ComplexMatrix A = rng.gaussian_matrix(4, 4);
    ComplexMatrix B = rng.gaussian_matrix(4, 4);
    const double scale = op_norm(A) * op_norm(B);
    CHECK(op_norm(A * B) <= scale + 1e-12 * scale);
    CHECK(op_norm(kron(A, B)) == doctest::Approx(scale).epsilon(1e-10));
  }
}

TEST_CASE("psd_sqrt squares back and herm_eig reconstructs") {
  for (std::uint64_t t = 0; t < 10; ++t) {
    Rng rng = Rng::split(7, t);
    ComplexMatrix G = rng.gaussian_matrix(5, 5);
    ComplexMatrix M = G * G.adjoint();  // PSD
    ComplexMatrix S = psd_sqrt(M);
    CHECK((S * S - M).norm() <= 1e-10 * std::max(1.0, M.norm()));

    ComplexMatrix H = 0.5 * (G + ComplexMatrix(G.adjoint()));
    auto [lam, U] = herm_eig(H);
    ComplexMatrix R = U * lam.asDiagonal().toDenseMatrix().cast<Complex>() *
                      U.adjoint();
    CHECK((H - R).norm() <= 1e-10 * std::max(1.0, H.norm()));
    CHECK((U.adjoint() * U - identity(5)).norm() < 1e-12);
  }
}

TEST_CASE("power iteration cross-checks the SVD norm") {
  for (std::uint64_t t = 0; t < 5; ++t) {
    Rng rng = Rng::split(1234, t);
    ComplexMatrix A = rng.gaussian_matrix(6, 6);
    CHECK(power_iteration_norm(A, 500) ==
          doctest::Approx(op_norm(A)).epsilon(1e-6));
  }
}

TEST_CASE("inverse satisfies its residual contract on random input") {
  for (std::uint64_t t = 0; t < 10; ++t) {
    Rng rng = Rng::split(314, t);
    ComplexMatrix A = rng.gaussian_matrix(5, 5) + 3.0 * identity(5);
    CHECK((A * inverse(A) - identity(5)).norm() < 1e-10);
  }
}
