#include "qfi/superop.hpp"

#include <cmath>

namespace qfi {

namespace {

RealVector clamped_spectrum(const RealVector& eigenvalues, double eps_zero) {
  RealVector a = eigenvalues;
  for (Index i = 0; i < a.size(); ++i)
    if (a[i] <= eps_zero) a[i] = 0.0;  // also scrubs psd-tolerance negatives
  return a;
}

bool real_sym_psd(const RealMatrix& m) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(0.5 * (m + m.transpose()));
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return es.eigenvalues().minCoeff() >= -1e-10 * scale;
}

Matrix hadamard_route(const StandardFunction& f, const EigDecomposition& eig,
                      double eps_zero, const Matrix& b, bool inverse) {
  if (eig.vectors.rows() != b.rows() || eig.vectors.cols() != b.cols())
    throw DimMismatch("operand dimension does not match the state");
  MeanKernel mk = mean_kernel(f, eig.eigenvalues, eps_zero);
  Matrix bt = eig.vectors.adjoint() * b * eig.vectors;
  const RealMatrix& factor = inverse ? mk.inverse : mk.kernel;
  bt.array() *= factor.cast<Complex>().array();
  return eig.vectors * bt * eig.vectors.adjoint();
}

}  // namespace

MeanKernel mean_kernel(const StandardFunction& f, const RealVector& eigenvalues,
                       double eps_zero) {
  if (eigenvalues.size() == 0) throw DimMismatch("empty spectrum");
  RealVector a = clamped_spectrum(eigenvalues, eps_zero);
  Index n = a.size();
  MeanKernel mk;
  mk.kernel.resize(n, n);
  mk.inverse.resize(n, n);
  mk.zero_mask.resize(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      double m = mean(f, a[i], a[j]);
      mk.kernel(i, j) = m;
      mk.zero_mask(i, j) = (m == 0.0);
      mk.inverse(i, j) = (m == 0.0) ? 0.0 : 1.0 / m;
    }
  return mk;
}

Matrix jd_apply(const StandardFunction& f, const DensityMatrix& d, const Matrix& b) {
  return hadamard_route(f, d.eig(), d.eps_zero(), b, false);
}

Matrix jd_apply(const StandardFunction& f, const EigDecomposition& eig, double eps_zero,
                const Matrix& b) {
  return hadamard_route(f, eig, eps_zero, b, false);
}

Matrix jd_inverse_apply(const StandardFunction& f, const DensityMatrix& d,
                        const Matrix& b) {
  return hadamard_route(f, d.eig(), d.eps_zero(), b, true);
}

Matrix jd_inverse_apply(const StandardFunction& f, const EigDecomposition& eig,
                        double eps_zero, const Matrix& b) {
  return hadamard_route(f, eig, eps_zero, b, true);
}

Quadrature gauss_legendre_unit(int n) {
  if (n < 1) throw BadParams("quadrature order must be >= 1");
  RealMatrix jac = RealMatrix::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    double b = k / std::sqrt(4.0 * k * k - 1.0);
    jac(k, k - 1) = b;
    jac(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(jac);
  if (es.info() != Eigen::Success)
    throw ConvergenceFailure("Golub-Welsch eigensolve failed");
  Quadrature q;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    q.nodes[i] = 0.5 * (es.eigenvalues()[i] + 1.0);  // map [-1,1] -> [0,1]
    double v0 = es.eigenvectors()(0, i);
    q.weights[i] = v0 * v0;  // 2*v0^2 on [-1,1], halved by the map
  }
  return q;
}

Matrix sld_inverse_oracle(const DensityMatrix& d, const Matrix& b, int n_quad) {
  require_same_dim(d.matrix(), b);
  if (!d.strictly_positive())
    throw SingularState("integral oracle requires a strictly positive state");
  if (n_quad < 2) throw BadParams("n_quad must be >= 2");
  const EigDecomposition& eig = d.eig();
  Index n = d.dim();
  // t = c s/(1-s) with c matched to the slowest decay rate keeps the
  // transformed integrand well resolved for skewed spectra.
  double c = 1.0 / eig.eigenvalues.minCoeff();
  Quadrature q = gauss_legendre_unit(n_quad);
  Matrix acc = Matrix::Zero(n, n);
  for (int k = 0; k < n_quad; ++k) {
    double s = q.nodes[k];
    double t = c * s / (1.0 - s);
    double w = q.weights[k] * c / ((1.0 - s) * (1.0 - s));
    RealVector e = (-0.5 * t * eig.eigenvalues.array()).exp();
    Matrix et = eig.vectors * e.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
    acc += w * (et * b * et);
  }
  return acc;
}

BkmOracleResult bkm_oracles(const DensityMatrix& d, const Matrix& b, int n_quad) {
  require_same_dim(d.matrix(), b);
  if (!d.strictly_positive())
    throw SingularState("integral oracle requires a strictly positive state");
  if (n_quad < 2) throw BadParams("n_quad must be >= 2");
  const EigDecomposition& eig = d.eig();
  Index n = d.dim();
  Quadrature q = gauss_legendre_unit(n_quad);
  BkmOracleResult out{Matrix::Zero(n, n), Matrix::Zero(n, n)};
  Matrix id = Matrix::Identity(n, n);
  for (int k = 0; k < n_quad; ++k) {
    double t = q.nodes[k];
    double w = q.weights[k];
    RealVector pt = eig.eigenvalues.array().pow(t);
    RealVector p1t = eig.eigenvalues.array().pow(1.0 - t);
    Matrix dt = eig.vectors * pt.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
    Matrix d1t = eig.vectors * p1t.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
    out.forward += w * (dt * b * d1t);

    double u = t / (1.0 - t);  // second rule reuses the nodes on (0, inf)
    double wu = w / ((1.0 - t) * (1.0 - t));
    Matrix resolvent = (d.matrix() + u * id).inverse();
    out.inverse += wu * (resolvent * b * resolvent);
  }
  return out;
}

PositivityReport positivity_report(const StandardFunction& f, const DensityMatrix& d) {
  MeanKernel mk = mean_kernel(f, d.eig().eigenvalues, d.eps_zero());
  return {real_sym_psd(mk.kernel), real_sym_psd(mk.inverse)};
}

}  // namespace qfi
