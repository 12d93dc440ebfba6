#pragma once

#include "qfi/matrix.hpp"
#include "qfi/monotone.hpp"

namespace qfi {

// Matrix of means m_f(lambda_i, lambda_j) over a spectrum, with the mask of
// entries treated as exact zeros (those with m <= eps relative cutoff).
// inverse(i,j) is 1/kernel(i,j) on the unmasked set and 0 elsewhere, i.e. the
// Moore-Penrose reciprocal.
struct MeanKernel {
  RealMatrix kernel;
  RealMatrix inverse;
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> zero_mask;
};

// eps_zero: eigenvalues at or below it count as zero (negatives within the
// psd tolerance are clamped to zero first).
MeanKernel mean_kernel(const StandardFunction& f, const RealVector& eigenvalues,
                       double eps_zero);

// J_f,D applied to b: conjugate into d's eigenbasis, multiply entrywise by the
// mean kernel, conjugate back. The overloads taking an explicit decomposition
// exist so gauge-freedom tests can feed equivalent decompositions directly.
Matrix jd_apply(const StandardFunction& f, const DensityMatrix& d, const Matrix& b);
Matrix jd_apply(const StandardFunction& f, const EigDecomposition& eig, double eps_zero,
                const Matrix& b);

// Moore-Penrose inverse of J_f,D applied to b (kernel division on the
// support, zero on masked entries).
Matrix jd_inverse_apply(const StandardFunction& f, const DensityMatrix& d, const Matrix& b);
Matrix jd_inverse_apply(const StandardFunction& f, const EigDecomposition& eig,
                        double eps_zero, const Matrix& b);

// Independent integral-representation oracles (used to certify the kernel
// route). Both require a strictly positive state.
//
// For f = sld: J^{-1} b = int_0^inf exp(-t d / 2) b exp(-t d / 2) dt.
Matrix sld_inverse_oracle(const DensityMatrix& d, const Matrix& b, int n_quad = 96);

struct BkmOracleResult {
  Matrix forward;  // int_0^1 d^t b d^(1-t) dt
  Matrix inverse;  // int_0^inf (d + t)^{-1} b (d + t)^{-1} dt
};
BkmOracleResult bkm_oracles(const DensityMatrix& d, const Matrix& b, int n_quad = 96);

// Entrywise positive semidefiniteness of the kernel and of its Moore-Penrose
// reciprocal, as matrices indexed by the spectrum.
struct PositivityReport {
  bool kernel_psd = false;
  bool inverse_kernel_psd = false;
};
PositivityReport positivity_report(const StandardFunction& f, const DensityMatrix& d);

// Gauss-Legendre rule on (0, 1) via the Golub-Welsch tridiagonal eigensolve.
struct Quadrature {
  RealVector nodes;
  RealVector weights;
};
Quadrature gauss_legendre_unit(int n);

}  // namespace qfi
