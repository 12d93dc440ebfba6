#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "qfi/errors.hpp"

namespace qfi {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

namespace tol {
inline constexpr double herm = 1e-10;    // hermiticity defect
inline constexpr double trace = 1e-10;   // |Tr - 1| for states
inline constexpr double psd = 1e-10;     // allowed negative eigenvalue
inline constexpr double recon = 1e-9;    // eigendecomposition reconstruction
}  // namespace tol

void require_square(const Matrix& m);
void require_same_dim(const Matrix& a, const Matrix& b);
void require_finite(const Matrix& m);

// max_ij |m_ij - conj(m_ji)|
double hermiticity_defect(const Matrix& m);
bool is_hermitian(const Matrix& m, double tolerance = tol::herm);
void require_hermitian(const Matrix& m, double tolerance = tol::herm);

struct EigDecomposition {
  RealVector eigenvalues;  // ascending
  Matrix vectors;          // unitary, column k pairs with eigenvalues[k]
};

// Self-adjoint eigendecomposition of (m + m^dagger)/2 after a hermiticity
// check. Throws NotHermitian / ConvergenceFailure.
EigDecomposition eig_hermitian(const Matrix& m, double tolerance = tol::herm);

// Half-open index ranges [begin, end) of eigenvalue clusters: consecutive
// ascending eigenvalues closer than eps belong to one cluster.
std::vector<std::pair<Index, Index>> cluster_eigenvalues(const RealVector& eigenvalues,
                                                         double eps);

// Hilbert-Schmidt inner product Tr(a^dagger b), conjugate-linear in a.
Complex hs_inner(const Matrix& a, const Matrix& b);

class DensityMatrix {
 public:
  // Validates hermiticity, unit trace and positivity, symmetrizes, and
  // stores the eigendecomposition eagerly (every metric needs it).
  static DensityMatrix validate(const Matrix& m, double tol_herm = tol::herm,
                                double tol_trace = tol::trace,
                                double tol_psd = tol::psd);

  const Matrix& matrix() const { return mat_; }
  const EigDecomposition& eig() const { return eig_; }
  Index dim() const { return mat_.rows(); }
  bool strictly_positive() const { return strictly_positive_; }
  // Eigenvalues at or below this are treated as exact zeros: dim * 1e-12 * lambda_max.
  double eps_zero() const { return eps_zero_; }

  // Same state, caller-supplied spectral decomposition (must reconstruct the
  // matrix within tol::recon). Lets tests exercise eigenbasis gauge freedom:
  // column phases and rotations inside degenerate blocks must not change results.
  DensityMatrix with_decomposition(EigDecomposition eig) const;

 private:
  DensityMatrix(Matrix m, EigDecomposition eig, bool strictly_positive, double eps_zero)
      : mat_(std::move(m)),
        eig_(std::move(eig)),
        strictly_positive_(strictly_positive),
        eps_zero_(eps_zero) {}

  Matrix mat_;
  EigDecomposition eig_;
  bool strictly_positive_;
  double eps_zero_;
};

// i[d, x] for Hermitian x; Hermitian and traceless by construction.
Matrix commutator_tangent(const DensityMatrix& d, const Matrix& x);

// Splits Hermitian b into (commuting, commutator) parts: the block-diagonal
// piece across d's eigenvalue clusters commutes with d, the rest is i[d, x]
// for some Hermitian x. The parts are HS-orthogonal.
std::pair<Matrix, Matrix> tangent_decompose(const DensityMatrix& d, const Matrix& b);

}  // namespace qfi
