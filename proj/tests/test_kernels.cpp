// Tests for reconstruction operators, Poisson kernels, kernel factors and
// the graded norm machinery.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "ncball/errors.hpp"
#include "ncball/fock.hpp"
#include "ncball/kernels.hpp"
#include "ncball/linalg.hpp"
#include "ncball/tuples.hpp"

using namespace ncball;

namespace {

// Zeroes every block whose level shift differs from k; the surviving part of
// a corner product is the exact corner of its degree-k graded component.
ComplexMatrix graded_part(const ComplexMatrix& M, const TruncatedFock& F, int k) {
  ComplexMatrix out = ComplexMatrix::Zero(M.rows(), M.cols());
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    const int lr = F.level_of(r % F.dim);
    for (Eigen::Index c = 0; c < M.cols(); ++c)
      if (lr - F.level_of(c % F.dim) == k) out(r, c) = M(r, c);
  }
  return out;
}

ComplexMatrix dense_pow(const ComplexMatrix& M, int k) {
  ComplexMatrix P = ComplexMatrix::Identity(M.rows(), M.cols());
  for (int i = 0; i < k; ++i) P = (M * P).eval();
  return P;
}

}  // namespace

TEST_CASE("reconstruction matches the kron assembly from creation operators") {
  const OperatorTuple X = random_tuple(2, 2, 0.8, 11);
  const int m = 3;
  const TruncatedFock F(2, m);
  ComplexMatrix expected = ComplexMatrix::Zero(2 * F.dim, 2 * F.dim);
  for (int i = 1; i <= 2; ++i)
    expected += kron(X.X[static_cast<std::size_t>(i - 1)].adjoint(),
                     right_creation(F, i));
  const GradedOperator R = reconstruction(X, m);
  CHECK(R.shift_lo == 1);
  CHECK(R.shift_hi == 1);
  CHECK((R.M - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("reconstruction norm equals the row norm once level 1 exists") {
  for (std::uint64_t seed : {3u, 4u}) {
    const OperatorTuple X = random_tuple(2, 2, 0.7, seed);
    const GradedOperator R = reconstruction(X, 3);
    CHECK(op_norm(R.M) == doctest::Approx(row_norm(X)).epsilon(1e-12));
  }
  const OperatorTuple Z = random_tuple(2, 2, 0.7, 5);
  CHECK(op_norm(reconstruction(Z, 0).M) == 0.0);
}

TEST_CASE("reconstruction is nilpotent of order m+1 and stays in its band") {
  const OperatorTuple X = random_tuple(3, 2, 0.9, 7);
  const int m = 3;
  const GradedOperator R = reconstruction(X, m);
  CHECK(level_shift_violation(R) == 0.0);
  CHECK(dense_pow(R.M, m + 1).cwiseAbs().sum() == 0.0);
  CHECK(dense_pow(R.M, m).cwiseAbs().sum() > 0.0);

  GradedOperator bad = R;
  bad.M(0, 0) = 0.5;  // vacuum-to-vacuum entry sits at shift 0
  CHECK(level_shift_violation(bad) == 0.5);
}

TEST_CASE("poisson kernel of a scalar point reproduces the geometric matrix") {
  const OperatorTuple X = scalar_tuple({Complex(0.5, 0.0)});
  const ComplexMatrix P = poisson_kernel(X, 2, 1.0);
  ComplexMatrix expected(3, 3);
  expected << 1.0, 0.5, 0.25, 0.5, 1.0, 0.5, 0.25, 0.5, 1.0;
  CHECK((P - expected).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("poisson kernel at the origin or radius zero is the identity") {
  const OperatorTuple Z = zero_tuple(2, 2);
  const TruncatedFock F(2, 3);
  const ComplexMatrix P0 = poisson_kernel(Z, 3, 0.9);
  CHECK((P0 - ComplexMatrix::Identity(2 * F.dim, 2 * F.dim)).cwiseAbs().sum() == 0.0);

  const OperatorTuple X = random_tuple(2, 2, 0.8, 19);
  const ComplexMatrix P1 = poisson_kernel(X, 3, 0.0);
  CHECK((P1 - ComplexMatrix::Identity(2 * F.dim, 2 * F.dim)).cwiseAbs().sum() == 0.0);
}

TEST_CASE("poisson kernel entries carry r^|w| times the word coefficient") {
  const OperatorTuple X = scalar_tuple({Complex(0.3, 0.0), Complex(0.4, 0.0)});
  const double r = 0.5;
  const TruncatedFock F(2, 2);
  const ComplexMatrix P = poisson_kernel(X, 2, r);
  const Eigen::Index i12 = word_index(Word({1, 2}), F);
  const Eigen::Index i2 = word_index(Word({2}), F);
  CHECK(std::abs(P(0, i12) - Complex(r * r * 0.12, 0.0)) <= 1e-15);
  CHECK(std::abs(P(0, i2) - Complex(r * 0.4, 0.0)) <= 1e-15);
  CHECK((P - P.adjoint()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("poisson kernel rejects divergent radii and accepts spectral points") {
  const OperatorTuple far = scalar_tuple({Complex(1.5, 0.0)});
  CHECK_THROWS_AS(poisson_kernel(far, 2, 0.9), Divergent);

  const OperatorTuple boundary = scalar_tuple({Complex(1.0, 0.0)});
  CHECK_THROWS_AS(poisson_kernel(boundary, 2, 1.0), Divergent);
  CHECK_NOTHROW(poisson_kernel(boundary, 2, 0.9));

  ComplexMatrix N(2, 2);
  N << 0.0, 2.0, 0.0, 0.0;  // row norm 2, joint spectral radius 0
  const OperatorTuple nil(1, 2, {N});
  CHECK_NOTHROW(poisson_kernel(nil, 3, 1.0));

  CHECK_THROWS_AS(poisson_kernel(far, 2, 1.5), Error);
}

TEST_CASE("kernel factor of a disc point is the lower triangular square root") {
  const OperatorTuple X = scalar_tuple({Complex(0.6, 0.0)});
  const GradedOperator C = kernel_factor(X, 1);
  const double delta = std::sqrt(1.0 - 0.36);
  ComplexMatrix expected(2, 2);
  expected << delta, 0.0, 0.6 * delta, delta;
  CHECK((C.M - expected).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK(C.shift_lo == 0);
  CHECK(C.shift_hi == 1);
}

TEST_CASE("kernel factor times its inverse is the identity corner") {
  for (std::uint64_t seed : {23u, 24u}) {
    const OperatorTuple X = random_tuple(2, 2, 0.85, seed);
    const int m = 4;
    const ComplexMatrix C = kernel_factor(X, m).M;
    const ComplexMatrix Cinv = kernel_factor_inverse(X, m).M;
    const Eigen::Index total = C.rows();
    const ComplexMatrix I = ComplexMatrix::Identity(total, total);
    CHECK(op_norm(C * Cinv - I) <= 1e-12);
    CHECK(op_norm(Cinv * C - I) <= 1e-12);
    CHECK(level_shift_violation(kernel_factor_inverse(X, m)) == 0.0);
    CHECK(level_shift_violation(kernel_factor(X, m)) == 0.0);
  }
}

TEST_CASE("squared kernel factor is a compression of the full poisson kernel") {
  // On the untruncated space C^* C equals the r = 1 kernel, so the corner of
  // the kernel dominates corner(C)^* corner(C) in the semidefinite order,
  // the gap being the part of C that escapes past the top level.
  const OperatorTuple X = random_tuple(2, 1, 0.6, 31);
  const int m = 5;
  const ComplexMatrix C = kernel_factor(X, m).M;
  const ComplexMatrix gap = poisson_kernel(X, m, 1.0) - C.adjoint() * C;
  const auto [vals, vecs] = herm_eig(((gap + gap.adjoint()) / 2.0).eval());
  CHECK(vals(0) >= -1e-12);
  CHECK(vals(vals.size() - 1) > 1e-6);  // the truncation gap is genuinely there
}

TEST_CASE("kernel factor guards strictness and invertibility") {
  const OperatorTuple boundary = scalar_tuple({Complex(1.0, 0.0)});
  CHECK_THROWS_AS(kernel_factor(boundary, 2), NotStrict);
  CHECK_THROWS_AS(kernel_factor_inverse(boundary, 2), DefectSingular);
  CHECK_THROWS_AS(reconstruction(random_tuple(2, 1, 0.5, 1), 13), Error);
}

TEST_CASE("graded component norms match blocks cut from the corner product") {
  const OperatorTuple A = random_tuple(2, 2, 0.75, 41);
  const OperatorTuple B = random_tuple(2, 2, 0.55, 42);
  const int m = 4;
  const TruncatedFock F(2, m);
  const ComplexMatrix Q =
      (kernel_factor(A, m).M * kernel_factor_inverse(B, m).M).eval();
  const std::vector<double> t = factor_component_norms(A, B, m);
  for (int k = 0; k <= m; ++k) {
    const double block = op_norm(graded_part(Q, F, k));
    CHECK(t[static_cast<std::size_t>(k)] == doctest::Approx(block).epsilon(1e-11));
  }
  double off_band = 0.0;
  for (int k = 1; k <= m; ++k)
    off_band = std::max(off_band, op_norm(graded_part(Q, F, -k)));
  CHECK(off_band <= 1e-14);
}

TEST_CASE("factor component norms vanish identically on the diagonal") {
  const OperatorTuple A = random_tuple(2, 2, 0.8, 43);
  const std::vector<double> t = factor_component_norms(A, A, 10);
  CHECK(t[0] == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t k = 1; k < t.size(); ++k) CHECK(t[k] == 0.0);
}

TEST_CASE("difference component norms match dense reconstruction powers") {
  const OperatorTuple A = random_tuple(2, 2, 0.7, 44);
  const OperatorTuple B = random_tuple(2, 2, 0.5, 45);
  const int m = 4;
  const ComplexMatrix RA = reconstruction(A, m).M;
  const ComplexMatrix RB = reconstruction(B, m).M;
  const std::vector<double> h = difference_component_norms(A, B, m);
  CHECK(h[0] == 0.0);
  for (int k = 1; k <= m; ++k) {
    const double dense = op_norm(dense_pow(RA, k) - dense_pow(RB, k));
    CHECK(h[static_cast<std::size_t>(k)] == doctest::Approx(dense).epsilon(1e-11));
  }
}

TEST_CASE("difference component norms of scalar points are exact") {
  const OperatorTuple A = scalar_tuple({Complex(0.5, 0.0)});
  const OperatorTuple B = scalar_tuple({Complex(0.3, 0.0)});
  const std::vector<double> h = difference_component_norms(A, B, 6);
  for (int k = 1; k <= 6; ++k)
    CHECK(h[static_cast<std::size_t>(k)] ==
          doctest::Approx(std::pow(0.5, k) - std::pow(0.3, k)).epsilon(1e-13));
}

TEST_CASE("power norm sequence reproduces scalar and nilpotent profiles") {
  const std::vector<double> a = power_norm_sequence(scalar_tuple({Complex(0.5, 0.0)}), 10);
  for (int k = 0; k <= 10; ++k)
    CHECK(a[static_cast<std::size_t>(k)] == doctest::Approx(std::pow(0.5, k)).epsilon(1e-13));

  ComplexMatrix N(2, 2);
  N << 0.0, 1.0, 0.0, 0.0;
  const std::vector<double> b = power_norm_sequence(OperatorTuple(1, 2, {N}), 5);
  CHECK(b[0] == 1.0);
  CHECK(b[1] == doctest::Approx(1.0).epsilon(1e-14));
  for (int k = 2; k <= 5; ++k) CHECK(b[static_cast<std::size_t>(k)] == 0.0);
}

TEST_CASE("geometric tail is exact on geometric sequences and sound in general") {
  const std::vector<double> a = power_norm_sequence(scalar_tuple({Complex(0.5, 0.0)}), 30);
  CHECK(geometric_tail(a, 5) == doctest::Approx(std::pow(0.5, 5)).epsilon(1e-13));

  ComplexMatrix N(2, 2);
  N << 0.0, 1.0, 0.0, 0.0;
  const std::vector<double> b = power_norm_sequence(OperatorTuple(1, 2, {N}), 5);
  CHECK(geometric_tail(b, 0) == 1.0);
  CHECK(geometric_tail(b, 2) == 0.0);

  const std::vector<double> flat(10, 1.0);
  CHECK(std::isinf(geometric_tail(flat, 3)));

  // soundness: the bound dominates partial sums of the true sequence
  const OperatorTuple X = random_tuple(2, 2, 0.9, 46);
  const std::vector<double> c = power_norm_sequence(X, 80);
  for (int K : {5, 10, 20}) {
    double partial = 0.0;
    for (int k = K + 1; k <= 80; ++k) partial += c[static_cast<std::size_t>(k)];
    CHECK(geometric_tail(c, K) >= partial);
  }
}

TEST_CASE("tail bound evaluates its closed form and dominates exact tails") {
  const OperatorTuple A = scalar_tuple({Complex(0.5, 0.0)});
  const OperatorTuple B = scalar_tuple({Complex(0.3, 0.0)});
  const double expected =
      std::sqrt(0.75) / std::sqrt(0.91) * 0.8 * std::pow(0.5, 3) / 0.5;
  CHECK(tail_bound(A, B, 3) == doctest::Approx(expected).epsilon(1e-12));

  for (std::uint64_t seed : {51u, 52u}) {
    const OperatorTuple P = random_tuple(2, 2, 0.8, seed);
    const OperatorTuple Q = random_tuple(2, 2, 0.6, seed + 100);
    const std::vector<double> t = factor_component_norms(P, Q, 120);
    for (int m : {2, 5, 9}) {
      double exact_tail = 0.0;
      for (std::size_t k = static_cast<std::size_t>(m) + 1; k < t.size(); ++k)
        exact_tail += t[k];
      CHECK(tail_bound(P, Q, m) >= exact_tail);
      CHECK(tail_bound(P, Q, m + 1) <= tail_bound(P, Q, m));
    }
  }

  OperatorTuple C = A, D = B;
  C.n = 2;  // mismatched arity must be rejected before any numerics
  CHECK_THROWS_AS(tail_bound(C, D, 2), ArityMismatch);
}

TEST_CASE("corner quotient norm is exact on identical tuples and monotone in m") {
  const OperatorTuple A = random_tuple(2, 2, 0.8, 61);
  CHECK(corner_quotient_norm(A, A, 4) == doctest::Approx(1.0).epsilon(1e-12));

  const OperatorTuple B = random_tuple(2, 2, 0.6, 62);
  double prev = 0.0;
  for (int m : {1, 2, 3, 4, 5}) {
    const double cur = corner_quotient_norm(A, B, m);
    CHECK(cur >= prev - 1e-10);
    prev = cur;
  }
}

TEST_CASE("corner quotient norm climbs to the disc formula for a scalar point") {
  const OperatorTuple A = scalar_tuple({Complex(0.5, 0.0)});
  const OperatorTuple O = zero_tuple(1, 1);
  const double limit = std::sqrt(3.0);
  double prev = 0.0;
  double gap_small = 0.0;
  for (int m : {2, 4, 8, 12, 16, 20}) {
    const double cur = corner_quotient_norm(A, O, m);
    CHECK(cur >= prev - 1e-12);
    CHECK(cur <= limit + 1e-12);
    if (m == 4) gap_small = limit - cur;
    prev = cur;
  }
  // Finite sections of the triangular Toeplitz factor close on the disc
  // value only at a polynomial rate, so the gap is visible but shrinking.
  CHECK(limit - prev <= 0.08);
  CHECK(limit - prev < 0.5 * gap_small);
}

TEST_CASE("matrix-free corner engines agree with dense corner norms") {
  const OperatorTuple A = random_tuple(2, 2, 0.75, 71);
  const OperatorTuple B = random_tuple(2, 2, 0.55, 72);
  const int m = 6;  // dimension 508 forces the matrix-free path

  const ComplexMatrix Q =
      (kernel_factor(A, m).M * kernel_factor_inverse(B, m).M).eval();
  const double dense = op_norm(Q);
  const double mf = corner_quotient_norm(A, B, m);
  CHECK(mf <= dense * (1.0 + 1e-10));
  CHECK(mf >= dense * (1.0 - 1e-6));

  const ComplexMatrix D = poisson_kernel(A, m, 0.9) - poisson_kernel(B, m, 0.9);
  const double dense_p = op_norm(D);
  const double mf_p = corner_poisson_diff_norm(A, B, m, 0.9);
  CHECK(mf_p <= dense_p * (1.0 + 1e-10));
  CHECK(mf_p >= dense_p * (1.0 - 1e-6));
}

TEST_CASE("poisson corners obey the harnack eigenvalue band") {
  const OperatorTuple X = random_tuple(2, 2, 0.95, 81);
  for (double r : {0.3, 0.9}) {
    const ComplexMatrix P = poisson_kernel(X, 5, r);
    const auto [vals, vecs] = herm_eig(P);
    CHECK(vals(0) >= (1.0 - r) / (1.0 + r) - 1e-10);
    CHECK(vals(vals.size() - 1) <= (1.0 + r) / (1.0 - r) + 1e-10);
  }
}

TEST_CASE("corner poisson difference norm is monotone in the level cut") {
  const OperatorTuple A = random_tuple(2, 1, 0.8, 91);
  const OperatorTuple B = random_tuple(2, 1, 0.5, 92);
  double prev = 0.0;
  for (int m : {1, 2, 3, 4, 5}) {
    const double cur = corner_poisson_diff_norm(A, B, m, 0.9);
    CHECK(cur >= prev - 1e-10);
    prev = cur;
  }
}
