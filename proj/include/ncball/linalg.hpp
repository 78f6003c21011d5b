// linalg.hpp: dense complex numeric kernel. Operator norms, Hermitian
// spectra, PSD square roots, inverses, Kronecker products.
#pragma once

#include <complex>
#include <utility>

#include <Eigen/Dense>

#include "ncball/errors.hpp"

namespace ncball {

using Complex = std::complex<double>;
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kSingularTol = 1e-13;

// Largest singular value. Empty matrices have norm 0.
double op_norm(const ComplexMatrix& M);

// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
// The input is symmetrized as (M + M*)/2 before solving; a relative
// deviation from Hermitian symmetry above kHermTol raises NotHermitian.
std::pair<RealVector, ComplexMatrix> herm_eig(const ComplexMatrix& M);

// Hermitian square root of a PSD matrix. Eigenvalues in
// [-kPsdTol * max(1, |M|), 0) are treated as roundoff and clamped to 0;
// anything lower raises NotPSD.
ComplexMatrix psd_sqrt(const ComplexMatrix& M);

// SVD-based inverse. Raises Singular when the smallest singular value
// falls below kSingularTol times the largest.
ComplexMatrix inverse(const ComplexMatrix& M);

// Tensor product with index convention (i_A, i_B) -> i_A * rows(B) + i_B.
ComplexMatrix kron(const ComplexMatrix& A, const ComplexMatrix& B);

ComplexMatrix identity(Eigen::Index d);

}  // namespace ncball
