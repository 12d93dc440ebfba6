#include "qfi/matrix.hpp"

#include <cmath>
#include <sstream>

namespace qfi {

void require_square(const Matrix& m) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << "matrix must be square, got " << m.rows() << "x" << m.cols();
    throw DimMismatch(os.str());
  }
  if (m.rows() == 0) throw DimMismatch("matrix must be nonempty");
}

void require_same_dim(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream os;
    os << "dimension mismatch: " << a.rows() << "x" << a.cols() << " vs " << b.rows()
       << "x" << b.cols();
    throw DimMismatch(os.str());
  }
}

void require_finite(const Matrix& m) {
  if (!m.allFinite()) throw ParseError("matrix has non-finite entries");
}

double hermiticity_defect(const Matrix& m) {
  require_square(m);
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& m, double tolerance) {
  return hermiticity_defect(m) <= tolerance;
}

void require_hermitian(const Matrix& m, double tolerance) {
  double defect = hermiticity_defect(m);
  if (defect > tolerance) {
    std::ostringstream os;
    os << "matrix is not Hermitian (defect " << defect << " > " << tolerance << ")";
    throw NotHermitian(os.str());
  }
}

EigDecomposition eig_hermitian(const Matrix& m, double tolerance) {
  require_hermitian(m, tolerance);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()));
  if (solver.info() != Eigen::Success)
    throw ConvergenceFailure("self-adjoint eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

std::vector<std::pair<Index, Index>> cluster_eigenvalues(const RealVector& eigenvalues,
                                                         double eps) {
  std::vector<std::pair<Index, Index>> clusters;
  Index n = eigenvalues.size();
  Index begin = 0;
  for (Index i = 1; i <= n; ++i) {
    if (i == n || eigenvalues[i] - eigenvalues[i - 1] > eps) {
      clusters.emplace_back(begin, i);
      begin = i;
    }
  }
  return clusters;
}

Complex hs_inner(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b);
  return (a.adjoint() * b).trace();
}

DensityMatrix DensityMatrix::validate(const Matrix& m, double tol_herm, double tol_trace,
                                      double tol_psd) {
  require_square(m);
  require_finite(m);
  double defect = hermiticity_defect(m);
  if (defect > tol_herm) {
    std::ostringstream os;
    os << "state is not Hermitian (defect " << defect << ")";
    throw NotHermitian(os.str());
  }
  Matrix sym = 0.5 * (m + m.adjoint());
  double tr = sym.trace().real();
  if (std::abs(tr - 1.0) > tol_trace) {
    std::ostringstream os;
    os << "state trace is " << tr << ", expected 1";
    throw TraceNotOne(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw ConvergenceFailure("eigendecomposition of the state did not converge");
  EigDecomposition eig{solver.eigenvalues(), solver.eigenvectors()};
  double min_eig = eig.eigenvalues.minCoeff();
  if (min_eig < -tol_psd) {
    std::ostringstream os;
    os << "state has negative eigenvalue " << min_eig;
    throw NotPsd(os.str());
  }
  double max_eig = eig.eigenvalues.maxCoeff();
  double eps_zero = static_cast<double>(m.rows()) * 1e-12 * max_eig;
  bool strict = min_eig > eps_zero;
  return DensityMatrix(std::move(sym), std::move(eig), strict, eps_zero);
}

DensityMatrix DensityMatrix::with_decomposition(EigDecomposition eig) const {
  if (eig.eigenvalues.size() != dim() || eig.vectors.rows() != dim() ||
      eig.vectors.cols() != dim())
    throw DimMismatch("decomposition size does not match the state");
  Matrix recon =
      eig.vectors * eig.eigenvalues.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  double err = (recon - mat_).cwiseAbs().maxCoeff();
  if (err > tol::recon) {
    std::ostringstream os;
    os << "decomposition does not reconstruct the state (error " << err << ")";
    throw BadParams(os.str());
  }
  DensityMatrix copy = *this;
  copy.eig_ = std::move(eig);
  return copy;
}

Matrix commutator_tangent(const DensityMatrix& d, const Matrix& x) {
  require_same_dim(d.matrix(), x);
  require_hermitian(x);
  const Complex i(0.0, 1.0);
  Matrix c = i * (d.matrix() * x - x * d.matrix());
  return 0.5 * (c + c.adjoint());  // scrub rounding, exact Hermitian
}

std::pair<Matrix, Matrix> tangent_decompose(const DensityMatrix& d, const Matrix& b) {
  require_same_dim(d.matrix(), b);
  require_hermitian(b);
  const EigDecomposition& eig = d.eig();
  Matrix bt = eig.vectors.adjoint() * b * eig.vectors;  // eigenbasis coordinates
  double cluster_eps = std::max(d.eps_zero(), 1e-12);
  auto clusters = cluster_eigenvalues(eig.eigenvalues, cluster_eps);
  Matrix commuting = Matrix::Zero(d.dim(), d.dim());
  for (const auto& [begin, end] : clusters)
    commuting.block(begin, begin, end - begin, end - begin) =
        bt.block(begin, begin, end - begin, end - begin);
  Matrix rest = bt - commuting;
  Matrix part_c = eig.vectors * commuting * eig.vectors.adjoint();
  Matrix part_k = eig.vectors * rest * eig.vectors.adjoint();
  part_c = 0.5 * (part_c + part_c.adjoint());
  part_k = 0.5 * (part_k + part_k.adjoint());
  return {part_c, part_k};
}

}  // namespace qfi
