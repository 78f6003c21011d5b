// kernels.cpp: reconstruction operators, Poisson kernels, kernel factors,
// graded-component norms and certified tails.
#include "ncball/kernels.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ncball/errors.hpp"
#include "ncball/rng.hpp"

namespace ncball {

namespace {

constexpr Eigen::Index kDenseBuildLimit = 3000;
constexpr Eigen::Index kDenseNormLimit = 300;

using RowMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapRM = Eigen::Map<RowMat>;
using CMapRM = Eigen::Map<const RowMat>;

void check_pair(const OperatorTuple& A, const OperatorTuple& B) {
  if (A.n != B.n || A.d != B.d)
    throw ArityMismatch("tuples must share the same n and matrix dimension");
}

// sum_i X_i^* (x) R_i as a sparse matrix on C^d (x) Fock_m, indices a*dimF + f.
Eigen::SparseMatrix<Complex> sparse_reconstruction(const OperatorTuple& X,
                                                   const TruncatedFock& F) {
  const Eigen::Index dimF = F.dim;
  const int d = X.d;
  const Eigen::Index below = F.offsets[F.m];  // number of words of length < m
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(static_cast<std::size_t>(below) * X.n * d * d);
  for (Eigen::Index f = 0; f < below; ++f) {
    for (int i = 1; i <= X.n; ++i) {
      const Eigen::Index g = append_index(F, f, i);
      const ComplexMatrix& Xi = X.X[static_cast<std::size_t>(i - 1)];
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          const Complex v = std::conj(Xi(b, a));
          if (v != Complex(0.0, 0.0))
            trips.emplace_back(a * dimF + g, b * dimF + f, v);
        }
    }
  }
  Eigen::SparseMatrix<Complex> S(d * dimF, d * dimF);
  S.setFromTriplets(trips.begin(), trips.end());
  return S;
}

// (D (x) I_F) M, with rows of M grouped as a*dimF + f.
ComplexMatrix block_left_mult(const ComplexMatrix& D, const ComplexMatrix& M,
                              Eigen::Index dimF) {
  ComplexMatrix out = ComplexMatrix::Zero(M.rows(), M.cols());
  const int d = static_cast<int>(D.rows());
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      if (D(a, b) != Complex(0.0, 0.0))
        out.middleRows(a * dimF, dimF) += D(a, b) * M.middleRows(b * dimF, dimF);
  return out;
}

ComplexVector block_vec_mult(const ComplexMatrix& D, const ComplexVector& x,
                             Eigen::Index dimF) {
  const int d = static_cast<int>(D.rows());
  ComplexVector y(x.size());
  CMapRM xm(x.data(), d, dimF);
  MapRM ym(y.data(), d, dimF);
  ym = D * xm;
  return y;
}

// Hermitian part of I - sum_i X_i X_i^*, the squared defect.
ComplexMatrix defect_square(const OperatorTuple& X) {
  ComplexMatrix S = identity(X.d) - row_sum(X);
  return ((S + S.adjoint()) / 2.0).eval();
}

// Delta_X^{-1} through the eigendecomposition of the squared defect.
ComplexMatrix defect_inverse(const OperatorTuple& X) {
  const auto [vals, vecs] = herm_eig(defect_square(X));
  const double top = std::max(1.0, vals(vals.size() - 1));
  if (vals(0) <= kSingularTol * top)
    throw DefectSingular("defect operator is not invertible");
  RealVector inv_sqrt(vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    inv_sqrt(i) = 1.0 / std::sqrt(vals(i));
  ComplexMatrix M = vecs * inv_sqrt.asDiagonal() * vecs.adjoint();
  return ((M + M.adjoint()) / 2.0).eval();
}

// 1 / sqrt(lambda_min(Delta_B^2)) = |Delta_B^{-1}|.
double defect_inverse_norm(const OperatorTuple& X) {
  const auto [vals, vecs] = herm_eig(defect_square(X));
  const double top = std::max(1.0, vals(vals.size() - 1));
  if (vals(0) <= kSingularTol * top)
    throw DefectSingular("defect operator is not invertible");
  return 1.0 / std::sqrt(vals(0));
}

double herm_abs_norm(const ComplexMatrix& M) {
  const auto [vals, vecs] = herm_eig(((M + M.adjoint()) / 2.0).eval());
  return std::max(std::abs(vals(0)), std::abs(vals(vals.size() - 1)));
}

// Level-sweep application of R_X, R_X^*, I - R_X and the nilpotent
// resolvents, never materializing the corner.
struct CornerEngine {
  TruncatedFock F;
  Eigen::Index dimF;
  int d;
  std::vector<ComplexMatrix> Xi;
  std::vector<ComplexMatrix> Xi_adj;

  CornerEngine(const OperatorTuple& X, int m) : F(X.n, m), dimF(F.dim), d(X.d) {
    for (const auto& M : X.X) {
      Xi.push_back(M);
      Xi_adj.push_back(M.adjoint());
    }
  }

  ComplexVector apply_R(const ComplexVector& x) const {
    ComplexVector y = ComplexVector::Zero(x.size());
    CMapRM xm(x.data(), d, dimF);
    MapRM ym(y.data(), d, dimF);
    const Eigen::Index below = F.offsets[F.m];
    for (Eigen::Index f = 0; f < below; ++f)
      for (std::size_t i = 0; i < Xi.size(); ++i) {
        const Eigen::Index g = append_index(F, f, static_cast<int>(i) + 1);
        ym.col(g) += Xi_adj[i] * xm.col(f);
      }
    return y;
  }

  ComplexVector apply_R_star(const ComplexVector& x) const {
    ComplexVector y = ComplexVector::Zero(x.size());
    CMapRM xm(x.data(), d, dimF);
    MapRM ym(y.data(), d, dimF);
    const Eigen::Index below = F.offsets[F.m];
    for (Eigen::Index f = 0; f < below; ++f)
      for (std::size_t i = 0; i < Xi.size(); ++i) {
        const Eigen::Index g = append_index(F, f, static_cast<int>(i) + 1);
        ym.col(f) += Xi[i] * xm.col(g);
      }
    return y;
  }

  ComplexVector apply_one_minus_R(const ComplexVector& x) const {
    return x - apply_R(x);
  }

  ComplexVector apply_one_minus_R_star(const ComplexVector& x) const {
    return x - apply_R_star(x);
  }

  // (I - R)^{-1} x by an ascending level sweep; exact since R is nilpotent.
  ComplexVector resolvent(const ComplexVector& x) const {
    ComplexVector y = x;
    MapRM ym(y.data(), d, dimF);
    const Eigen::Index below = F.offsets[F.m];
    for (Eigen::Index f = 0; f < below; ++f)
      for (std::size_t i = 0; i < Xi.size(); ++i) {
        const Eigen::Index g = append_index(F, f, static_cast<int>(i) + 1);
        ym.col(g) += Xi_adj[i] * ym.col(f);
      }
    return y;
  }

  // (I - R^*)^{-1} x by a descending level sweep.
  ComplexVector resolvent_star(const ComplexVector& x) const {
    ComplexVector y = x;
    MapRM ym(y.data(), d, dimF);
    const Eigen::Index below = F.offsets[F.m];
    for (Eigen::Index f = below - 1; f >= 0; --f)
      for (std::size_t i = 0; i < Xi.size(); ++i) {
        const Eigen::Index g = append_index(F, f, static_cast<int>(i) + 1);
        ym.col(f) += Xi[i] * ym.col(g);
      }
    return y;
  }
};

// Deterministic power iteration; every reported value is |M v| for some unit
// v, hence a certified lower bound on |M|.
template <class Apply, class ApplyAdj>
double power_norm_lower(Eigen::Index size, std::uint64_t stream, Apply&& apply,
                        ApplyAdj&& apply_adj) {
  Rng rng = Rng::split(0x636f726e6572ULL, stream);
  ComplexVector v(size);
  for (Eigen::Index i = 0; i < size; ++i) v(i) = rng.next_complex_gaussian();
  const double nv = v.norm();
  if (nv == 0.0) return 0.0;
  v /= nv;
  double best = 0.0;
  double prev = -1.0;
  int stable = 0;
  for (int it = 0; it < 500; ++it) {
    ComplexVector z = apply(v);
    const double est = z.norm();
    best = std::max(best, est);
    if (est == 0.0) break;
    ComplexVector w = apply_adj(z);
    const double nw = w.norm();
    if (nw == 0.0) break;
    v = w / nw;
    if (std::abs(est - prev) <= 1e-11 * std::max(1.0, est))
      ++stable;
    else
      stable = 0;
    prev = est;
    if (stable >= 3) break;
  }
  return best;
}

void check_dense_limit(Eigen::Index total) {
  if (total > kDenseBuildLimit)
    throw Error("corner dimension too large for dense assembly");
}

}  // namespace

double level_shift_violation(const GradedOperator& G) {
  const TruncatedFock F(G.n, G.m);
  double worst = 0.0;
  for (Eigen::Index r = 0; r < G.M.rows(); ++r) {
    const int lr = F.level_of(r % F.dim);
    for (Eigen::Index c = 0; c < G.M.cols(); ++c) {
      const int s = lr - F.level_of(c % F.dim);
      if (s < G.shift_lo || s > G.shift_hi)
        worst = std::max(worst, std::abs(G.M(r, c)));
    }
  }
  return worst;
}

GradedOperator reconstruction(const OperatorTuple& X, int m) {
  const TruncatedFock F(X.n, m);
  check_dense_limit(X.d * F.dim);
  ComplexMatrix M = sparse_reconstruction(X, F);
  return GradedOperator{X.n, m, X.d, 1, 1, std::move(M)};
}

ComplexMatrix poisson_kernel(const OperatorTuple& X, int m, double r) {
  if (!(r >= 0.0 && r <= 1.0))
    throw Error("poisson kernel radius must lie in [0, 1]");
  const double rn = row_norm(X);
  bool convergent = r * rn < 1.0;
  if (!convergent && joint_spectral_radius(X).value < 1.0)
    convergent = true;  // the estimate dominates r(X), so this is certified
  if (!convergent && r < 1.0 && rn <= 1.0 + 1e-9)
    convergent = true;  // closed ball at an interior radius
  if (!convergent)
    throw Divergent("free Poisson kernel diverges at this radius");

  const TruncatedFock F(X.n, m);
  const Eigen::Index total = X.d * F.dim;
  check_dense_limit(total);
  const Eigen::SparseMatrix<Complex> R = sparse_reconstruction(X, F);
  ComplexMatrix acc = ComplexMatrix::Identity(total, total);
  ComplexMatrix cur = ComplexMatrix::Identity(total, total);
  double rk = 1.0;
  for (int k = 1; k <= m; ++k) {
    cur = (R * cur).eval();
    rk *= r;
    if (rk == 0.0) break;
    acc += rk * cur;
  }
  ComplexMatrix P = acc + acc.adjoint() - ComplexMatrix::Identity(total, total);
  return ((P + P.adjoint()) / 2.0).eval();
}

GradedOperator kernel_factor(const OperatorTuple& X, int m) {
  const double rn = row_norm(X);
  if (rn >= 1.0 - 1e-8)
    throw NotStrict("kernel factor needs a tuple strictly inside the ball");
  const TruncatedFock F(X.n, m);
  const Eigen::Index total = X.d * F.dim;
  check_dense_limit(total);
  const Eigen::SparseMatrix<Complex> R = sparse_reconstruction(X, F);
  ComplexMatrix acc = ComplexMatrix::Identity(total, total);
  ComplexMatrix cur = ComplexMatrix::Identity(total, total);
  for (int k = 1; k <= m; ++k) {
    cur = (R * cur).eval();
    acc += cur;
  }
  ComplexMatrix M = block_left_mult(defect(X), acc, F.dim);
  return GradedOperator{X.n, m, X.d, 0, m, std::move(M)};
}

GradedOperator kernel_factor_inverse(const OperatorTuple& X, int m) {
  const TruncatedFock F(X.n, m);
  const Eigen::Index total = X.d * F.dim;
  check_dense_limit(total);
  const ComplexMatrix Dinv = defect_inverse(X);
  const Eigen::SparseMatrix<Complex> R = sparse_reconstruction(X, F);
  ComplexMatrix K = block_left_mult(Dinv, ComplexMatrix::Identity(total, total), F.dim);
  ComplexMatrix M = K - R * K;
  return GradedOperator{X.n, m, X.d, 0, 1, std::move(M)};
}

double tail_bound(const OperatorTuple& A, const OperatorTuple& B, int m) {
  check_pair(A, B);
  const double rnA = row_norm(A);
  const double rnB = row_norm(B);
  if (rnA >= 1.0 - 1e-8 || rnB >= 1.0 - 1e-8)
    throw NotStrict("tail bound needs tuples strictly inside the ball");
  const double nA = op_norm(defect(A));
  const double nBinv = defect_inverse_norm(B);
  return nA * nBinv * (rnA + rnB) * std::pow(rnA, m) / (1.0 - rnA);
}

std::vector<double> power_norm_sequence(const OperatorTuple& X, int kmax) {
  if (kmax < 0) throw Error("power norm sequence needs kmax >= 0");
  std::vector<double> a(static_cast<std::size_t>(kmax) + 1, 0.0);
  a[0] = 1.0;
  ComplexMatrix Y = identity(X.d);
  double log_scale = 0.0;
  for (int k = 1; k <= kmax; ++k) {
    Y = cp_apply(X, Y);
    Y = ((Y + Y.adjoint()) / 2.0).eval();
    const auto [vals, vecs] = herm_eig(Y);
    const double lam = vals(vals.size() - 1);
    if (lam <= 0.0) break;  // Phi^k(I) = 0 from here on
    a[static_cast<std::size_t>(k)] = std::exp(0.5 * (std::log(lam) + log_scale));
    Y /= lam;
    log_scale += std::log(lam);
  }
  return a;
}

double geometric_tail(const std::vector<double>& a, int K) {
  const int last = static_cast<int>(a.size()) - 1;
  if (last < 1) return std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (int k = K + 1; k <= last; ++k) sum += a[static_cast<std::size_t>(k)];
  for (int j = 1; j <= last; ++j)
    if (a[static_cast<std::size_t>(j)] == 0.0) return sum;  // nilpotent beyond j
  double rho = std::numeric_limits<double>::infinity();
  int jstar = 1;
  for (int j = 1; j <= last; ++j) {
    const double r = std::pow(a[static_cast<std::size_t>(j)], 1.0 / j);
    if (r < rho) {
      rho = r;
      jstar = j;
    }
  }
  if (!(rho < 1.0)) return std::numeric_limits<double>::infinity();
  double C = 0.0;
  for (int s = 0; s < jstar; ++s)
    C = std::max(C, a[static_cast<std::size_t>(s)] / std::pow(rho, s));
  const int start = std::max(K, last) + 1;
  return sum + C * std::pow(rho, start) / (1.0 - rho);
}

std::vector<double> factor_component_norms(const OperatorTuple& A,
                                           const OperatorTuple& B, int K) {
  check_pair(A, B);
  if (K < 0) throw Error("component norms need K >= 0");
  if (row_norm(A) > 1.0)
    throw NotStrict("graded components need the numerator tuple in the closed ball");
  const ComplexMatrix DA2 = defect_square(A);
  const ComplexMatrix DA = psd_sqrt(DA2);
  const ComplexMatrix DBinv = defect_inverse(B);
  std::vector<double> out(static_cast<std::size_t>(K) + 1, 0.0);
  out[0] = op_norm(DA * DBinv);
  std::vector<ComplexMatrix> diff;
  for (int i = 0; i < A.n; ++i)
    diff.push_back(A.X[static_cast<std::size_t>(i)] - B.X[static_cast<std::size_t>(i)]);
  ComplexMatrix Y = DA2;
  for (int k = 1; k <= K; ++k) {
    ComplexMatrix W = ComplexMatrix::Zero(A.d, A.d);
    for (const auto& Di : diff) W += Di * Y * Di.adjoint();
    ComplexMatrix M = DBinv * W * DBinv;
    M = ((M + M.adjoint()) / 2.0).eval();
    const auto [vals, vecs] = herm_eig(M);
    out[static_cast<std::size_t>(k)] = std::sqrt(std::max(0.0, vals(vals.size() - 1)));
    Y = cp_apply(A, Y);
    Y = ((Y + Y.adjoint()) / 2.0).eval();
  }
  return out;
}

std::vector<double> difference_component_norms(const OperatorTuple& A,
                                               const OperatorTuple& B, int K) {
  check_pair(A, B);
  if (K < 0) throw Error("component norms need K >= 0");
  const int d = A.d;
  std::vector<ComplexMatrix> D;
  for (int i = 0; i < A.n; ++i) {
    ComplexMatrix Di = ComplexMatrix::Zero(2 * d, 2 * d);
    Di.topLeftCorner(d, d) = A.X[static_cast<std::size_t>(i)];
    Di.bottomRightCorner(d, d) = B.X[static_cast<std::size_t>(i)];
    D.push_back(std::move(Di));
  }
  ComplexMatrix Y = ComplexMatrix::Zero(2 * d, 2 * d);
  Y.topLeftCorner(d, d) = identity(d);
  Y.bottomRightCorner(d, d) = identity(d);
  Y.topRightCorner(d, d) = -identity(d);
  Y.bottomLeftCorner(d, d) = -identity(d);
  std::vector<double> out(static_cast<std::size_t>(K) + 1, 0.0);
  for (int k = 1; k <= K; ++k) {
    ComplexMatrix Z = ComplexMatrix::Zero(2 * d, 2 * d);
    for (const auto& Di : D) Z += Di * Y * Di.adjoint();
    Y = ((Z + Z.adjoint()) / 2.0).eval();
    ComplexMatrix M = Y.topLeftCorner(d, d) + Y.topRightCorner(d, d) +
                      Y.bottomLeftCorner(d, d) + Y.bottomRightCorner(d, d);
    M = ((M + M.adjoint()) / 2.0).eval();
    const auto [vals, vecs] = herm_eig(M);
    out[static_cast<std::size_t>(k)] = std::sqrt(std::max(0.0, vals(vals.size() - 1)));
  }
  return out;
}

double corner_quotient_norm(const OperatorTuple& A, const OperatorTuple& B,
                            int m) {
  check_pair(A, B);
  if (row_norm(A) >= 1.0 - 1e-8 || row_norm(B) >= 1.0 - 1e-8)
    throw NotStrict("corner quotient needs tuples strictly inside the ball");
  const TruncatedFock F(A.n, m);
  const Eigen::Index total = A.d * F.dim;
  if (total <= kDenseNormLimit) {
    const ComplexMatrix CA = kernel_factor(A, m).M;
    const ComplexMatrix CBinv = kernel_factor_inverse(B, m).M;
    return op_norm(CA * CBinv);
  }
  const CornerEngine engA(A, m);
  const CornerEngine engB(B, m);
  const ComplexMatrix DA = defect(A);
  const ComplexMatrix DBinv = defect_inverse(B);
  const Eigen::Index dimF = F.dim;
  auto apply = [&](const ComplexVector& v) {
    ComplexVector t = block_vec_mult(DBinv, v, dimF);
    t = engB.apply_one_minus_R(t);
    t = engA.resolvent(t);
    return block_vec_mult(DA, t, dimF);
  };
  auto apply_adj = [&](const ComplexVector& v) {
    ComplexVector t = block_vec_mult(DA, v, dimF);
    t = engA.resolvent_star(t);
    t = engB.apply_one_minus_R_star(t);
    return block_vec_mult(DBinv, t, dimF);
  };
  return power_norm_lower(total, static_cast<std::uint64_t>(total) * 2 + m,
                          apply, apply_adj);
}

double corner_poisson_diff_norm(const OperatorTuple& A, const OperatorTuple& B,
                                int m, double r) {
  check_pair(A, B);
  const TruncatedFock F(A.n, m);
  const Eigen::Index total = A.d * F.dim;
  if (total <= kDenseNormLimit)
    return herm_abs_norm(poisson_kernel(A, m, r) - poisson_kernel(B, m, r));
  const CornerEngine engA(A, m);
  const CornerEngine engB(B, m);
  auto apply = [&](const ComplexVector& v) {
    ComplexVector acc = ComplexVector::Zero(v.size());
    ComplexVector p = v;
    ComplexVector q = v;
    double rk = 1.0;
    for (int k = 1; k <= m; ++k) {
      p = engA.apply_R(p);
      q = engB.apply_R(q);
      rk *= r;
      acc += rk * (p - q);
    }
    p = v;
    q = v;
    rk = 1.0;
    for (int k = 1; k <= m; ++k) {
      p = engA.apply_R_star(p);
      q = engB.apply_R_star(q);
      rk *= r;
      acc += rk * (p - q);
    }
    return acc;
  };
  return power_norm_lower(total, static_cast<std::uint64_t>(total) * 2 + m + 1,
                          apply, apply);
}

}  // namespace ncball
