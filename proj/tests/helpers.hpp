#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "qfi/matrix.hpp"
#include "qfi/random.hpp"

namespace testutil {

using qfi::Complex;
using qfi::Index;
using qfi::Matrix;
using qfi::RealMatrix;
using qfi::RealVector;

inline Matrix sigma_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix sigma_y() {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

inline Matrix sigma_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline qfi::DensityMatrix diag_state(std::initializer_list<double> probs) {
  RealVector v(static_cast<Index>(probs.size()));
  Index i = 0;
  for (double p : probs) v[i++] = p;
  return qfi::DensityMatrix::validate(v.cast<Complex>().asDiagonal());
}

template <typename A, typename B>
double max_abs_diff(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return (a.derived() - b.derived()).cwiseAbs().maxCoeff();
}

inline double min_eig(const RealMatrix& m) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(0.5 * (m + m.transpose()));
  return es.eigenvalues().minCoeff();
}

// Independent oracle: solve D C + C D = 2 B entrywise in D's eigenbasis.
inline Matrix sylvester_sld_solve(const qfi::DensityMatrix& d, const Matrix& b) {
  const Matrix& u = d.eig().vectors;
  const RealVector& lam = d.eig().eigenvalues;
  Matrix bt = u.adjoint() * b * u;
  Matrix ct(bt.rows(), bt.cols());
  for (Index i = 0; i < bt.rows(); ++i)
    for (Index j = 0; j < bt.cols(); ++j) ct(i, j) = 2.0 * bt(i, j) / (lam[i] + lam[j]);
  return u * ct * u.adjoint();
}

// Finite-outcome classical Fisher information from a distribution and its
// per-parameter derivatives; the textbook sum with zero-prob outcomes dropped.
inline RealMatrix classical_fi_reference(const std::vector<double>& p,
                                         const std::vector<std::vector<double>>& dp) {
  Index m = static_cast<Index>(dp.size());
  RealMatrix f = RealMatrix::Zero(m, m);
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] <= 0.0) continue;
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < m; ++j)
        f(i, j) += dp[static_cast<std::size_t>(i)][k] * dp[static_cast<std::size_t>(j)][k] / p[k];
  }
  return f;
}

}  // namespace testutil
