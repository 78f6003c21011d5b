#include "ncball/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace ncball {

double op_norm(const ComplexMatrix& M) {
  if (M.rows() == 0 || M.cols() == 0) return 0.0;
  if (M.rows() == 1 && M.cols() == 1) return std::abs(M(0, 0));
  Eigen::BDCSVD<ComplexMatrix> svd(M);
  return svd.singularValues()(0);
}

std::pair<RealVector, ComplexMatrix> herm_eig(const ComplexMatrix& M) {
  if (M.rows() != M.cols()) throw NotHermitian("herm_eig: matrix not square");
  const double scale = M.norm();
  const double dev = (M - M.adjoint()).norm();
  if (dev > kHermTol * std::max(scale, 1.0))
    throw NotHermitian("herm_eig: matrix not Hermitian within tolerance");
  ComplexMatrix H = 0.5 * (M + M.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(H);
  if (es.info() != Eigen::Success)
    throw NoConvergence("herm_eig: eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

ComplexMatrix psd_sqrt(const ComplexMatrix& M) {
  auto [lam, U] = herm_eig(M);
  const double floor = -kPsdTol * std::max(1.0, lam.cwiseAbs().maxCoeff());
  if (lam.size() > 0 && lam(0) < floor)
    throw NotPSD("psd_sqrt: matrix has a genuinely negative eigenvalue");
  RealVector root = lam.cwiseMax(0.0).cwiseSqrt();
  ComplexMatrix S = U * root.asDiagonal() * U.adjoint();
  return 0.5 * (S + ComplexMatrix(S.adjoint()));
}

ComplexMatrix inverse(const ComplexMatrix& M) {
  if (M.rows() != M.cols()) throw Singular("inverse: matrix not square");
  if (M.rows() == 0) return M;
  Eigen::BDCSVD<ComplexMatrix> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) <= kSingularTol * sv(0))
    throw Singular("inverse: matrix is numerically singular");
  RealVector inv_sv = sv.cwiseInverse();
  return svd.matrixV() * inv_sv.asDiagonal() * svd.matrixU().adjoint();
}

ComplexMatrix kron(const ComplexMatrix& A, const ComplexMatrix& B) {
  ComplexMatrix K(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return K;
}

ComplexMatrix identity(Eigen::Index d) {
  return ComplexMatrix::Identity(d, d);
}

}  // namespace ncball
