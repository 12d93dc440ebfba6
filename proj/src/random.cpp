#include "qfi/random.hpp"

#include <cmath>

namespace qfi {

double Rng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double Rng::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

int Rng::uniform_int(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(engine_);
}

Matrix random_ginibre(Rng& rng, Index rows, Index cols) {
  if (rows <= 0 || cols <= 0) throw BadParams("ginibre dimensions must be positive");
  Matrix g(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
  return g;
}

Matrix random_unitary(Rng& rng, Index n) {
  Matrix g = random_ginibre(rng, n, n);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the gauge so the distribution is Haar, not QR-implementation-defined.
  for (Index k = 0; k < n; ++k) {
    Complex d = r(k, k);
    double a = std::abs(d);
    q.col(k) *= (a > 0) ? d / a : Complex(1.0, 0.0);
  }
  return q;
}

Matrix random_hermitian(Rng& rng, Index n) {
  Matrix g = random_ginibre(rng, n, n);
  return 0.5 * (g + g.adjoint());
}

Matrix random_traceless_hermitian(Rng& rng, Index n) {
  Matrix h = random_hermitian(rng, n);
  h -= (h.trace() / static_cast<double>(n)) * Matrix::Identity(n, n);
  return h;
}

DensityMatrix random_density(Rng& rng, Index n, double min_eig) {
  if (n <= 0) throw BadParams("dimension must be positive");
  if (min_eig < 0.0 || min_eig * static_cast<double>(n) >= 1.0)
    throw BadParams("min_eig must satisfy 0 <= n*min_eig < 1");
  RealVector p(n);
  for (Index i = 0; i < n; ++i) p[i] = -std::log(rng.uniform(1e-300, 1.0));
  p /= p.sum();
  double slack = 1.0 - min_eig * static_cast<double>(n);
  RealVector lambda = (slack * p).array() + min_eig;
  Matrix u = random_unitary(rng, n);
  Matrix d = u * lambda.cast<Complex>().asDiagonal() * u.adjoint();
  return DensityMatrix::validate(0.5 * (d + d.adjoint()));
}

}  // namespace qfi
