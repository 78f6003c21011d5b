// kernels.hpp: graded operators on C^d (x) Fock_m. The reconstruction
// operator R_X, the free pluriharmonic Poisson kernel, its factor C_X and
// the factor's exact inverse, plus the graded-component norm sequences and
// certified geometric tails that drive every enclosure in the metrics layer.
//
// Everything here exploits one structural fact: operators that never lower
// the word length have corners (compressions to words of length <= m) that
// multiply exactly, so corner values of products, inverses and powers are
// assembled from finite nilpotent sums with no truncation error of their own.
#pragma once

#include <vector>

#include "ncball/fock.hpp"
#include "ncball/tuples.hpp"

namespace ncball {

struct GradedOperator {
  int n;
  int m;
  int d;
  int shift_lo;  // most negative level jump the operator can make
  int shift_hi;  // most positive level jump
  ComplexMatrix M;
};

// Largest magnitude found in a block outside the declared level-shift band.
double level_shift_violation(const GradedOperator& G);

// R_X = sum_i X_i^* (x) R_i; strictly level raising, nilpotent of order m+1.
GradedOperator reconstruction(const OperatorTuple& X, int m);

// Exact corner of P(rX, R): sum_{k=1..m} r^k R_X^k + I + adjoints.
// Accepts r = 1 for tuples whose joint spectral radius is certified < 1,
// where the full kernel still converges; Divergent otherwise.
ComplexMatrix poisson_kernel(const OperatorTuple& X, int m, double r);

// Exact corner of C_X = (Delta_X (x) I)(I - R_X)^{-1}.
GradedOperator kernel_factor(const OperatorTuple& X, int m);

// Exact corner of C_X^{-1} = (I - R_X)(Delta_X^{-1} (x) I); a finite
// product, no iterative inversion.
GradedOperator kernel_factor_inverse(const OperatorTuple& X, int m);

// Upper bound on the norm sum of the graded components of C_A C_B^{-1}
// above level m: |Delta_A| |Delta_B^{-1}| (|A| + |B|) |A|^m / (1 - |A|),
// where |.| of a tuple is its row norm. Monotone decreasing in m.
double tail_bound(const OperatorTuple& A, const OperatorTuple& B, int m);

// a_k = |Phi_X^k(I)|^{1/2} for k = 0..kmax; a_k = |R_X^k| on the full Fock
// space, and a_{j+k} <= a_j a_k. Computed in log space to dodge underflow.
std::vector<double> power_norm_sequence(const OperatorTuple& X, int kmax);

// Rigorous upper bound on sum_{k > K} a_k: exact entries while the sequence
// is available, then a certified geometric envelope a_k <= C rho^k with
// rho = min_j a_j^{1/j} (valid by submultiplicativity). Returns +inf when
// no contraction is visible in the sequence.
double geometric_tail(const std::vector<double>& a, int K);

// Exact norms of the graded components T_k of C_A C_B^{-1}, k = 0..K.
// T_0 = Delta_A Delta_B^{-1} and, for k >= 1, the coefficient of every word
// of length k factors through (A_i - B_i), giving
//   |T_k|^2 = | Delta_B^{-1} [ sum_i (A_i - B_i) Phi_A^{k-1}(Delta_A^2)
//                              (A_i - B_i)^* ] Delta_B^{-1} |.
// All zero for k >= 1 when A = B.
std::vector<double> factor_component_norms(const OperatorTuple& A,
                                           const OperatorTuple& B, int K);

// Exact norms of H_k = R_A^k - R_B^k (the analytic half of the graded
// expansion of P(A,R) - P(B,R)):
//   |H_k|^2 = | sum_{|w|=k} (A_w - B_w)(A_w - B_w)^* |,
// evaluated through a doubled completely positive map in O(d^3) per degree.
// Entry 0 is 0.
std::vector<double> difference_component_norms(const OperatorTuple& A,
                                               const OperatorTuple& B, int K);

// |C_A^(m) (C_B^(m))^{-1}|: dense SVD on small corners, otherwise a
// deterministic seeded power iteration whose Rayleigh value is a certified
// lower bound. Nondecreasing in m either way.
double corner_quotient_norm(const OperatorTuple& A, const OperatorTuple& B,
                            int m);

// |poisson_kernel(A,m,r) - poisson_kernel(B,m,r)| with the same dense /
// matrix-free split; the matrix-free value is again a lower bound.
double corner_poisson_diff_norm(const OperatorTuple& A, const OperatorTuple& B,
                                int m, double r);

}  // namespace ncball
