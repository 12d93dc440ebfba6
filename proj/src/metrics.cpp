#include "qfi/metrics.hpp"

#include <cmath>
#include <sstream>

#include "qfi/random.hpp"

namespace qfi {

namespace {

constexpr double kUnbiasedTol = 1e-8;

struct RotatedSet {
  MeanKernel mk;
  std::vector<Matrix> coords;        // eigenbasis coordinates of each tangent
  std::vector<double> masked;        // squared mass on masked kernel entries
  std::vector<double> fro2;          // squared Frobenius norm
};

RotatedSet rotate_all(const StandardFunction& f, const DensityMatrix& d,
                      const std::vector<Matrix>& tangents) {
  RotatedSet rs;
  rs.mk = mean_kernel(f, d.eig().eigenvalues, d.eps_zero());
  rs.coords.reserve(tangents.size());
  for (const Matrix& a : tangents) {
    require_same_dim(d.matrix(), a);
    require_hermitian(a);
    Matrix at = d.eig().vectors.adjoint() * a * d.eig().vectors;
    double masked = 0.0;
    for (Index i = 0; i < at.rows(); ++i)
      for (Index j = 0; j < at.cols(); ++j)
        if (rs.mk.zero_mask(i, j)) masked += std::norm(at(i, j));
    rs.masked.push_back(masked);
    rs.fro2.push_back(at.squaredNorm());
    rs.coords.push_back(std::move(at));
  }
  return rs;
}

bool significant_masked(double masked, double fro2) {
  double thr = 1e-8 * std::max(1.0, std::sqrt(fro2));
  return masked > thr * thr;
}

void require_supported(const RotatedSet& rs, std::size_t k, const char* what) {
  if (significant_masked(rs.masked[k], rs.fro2[k])) {
    std::ostringstream os;
    os << what << " has squared mass " << rs.masked[k]
       << " outside the kernel support; the metric diverges there";
    throw UnsupportedTangent(os.str());
  }
}

double gram_entry(const RotatedSet& rs, std::size_t k, std::size_t l) {
  Complex acc(0.0, 0.0);
  const Matrix& a = rs.coords[k];
  const Matrix& b = rs.coords[l];
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (!rs.mk.zero_mask(i, j))
        acc += std::conj(a(i, j)) * b(i, j) * rs.mk.inverse(i, j);
  return acc.real();
}

RealVector clamped(const RealVector& v) {
  return v.cwiseMax(0.0);
}

Matrix spectral_power(const EigDecomposition& eig, double p) {
  RealVector lp = clamped(eig.eigenvalues).array().pow(p);
  return eig.vectors * lp.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

}  // namespace

TangentVector TangentVector::make(const Matrix& m, double tol_herm) {
  require_square(m);
  require_finite(m);
  require_hermitian(m, tol_herm);
  Matrix sym = 0.5 * (m + m.adjoint());
  bool traceless = std::abs(sym.trace()) <= 1e-10;
  return TangentVector(std::move(sym), traceless);
}

ParamFamily::ParamFamily(DensityMatrix base, std::vector<TangentVector> derivatives)
    : base_(std::move(base)), derivatives_(std::move(derivatives)) {
  if (derivatives_.empty()) throw BadParams("a family needs at least one derivative");
  for (const TangentVector& t : derivatives_) {
    require_same_dim(base_.matrix(), t.matrix());
    if (!t.traceless())
      throw NotTraceless("family derivatives must be traceless (curves keep trace 1)");
  }
}

double covariance(const StandardFunction& f, const DensityMatrix& d, const Matrix& a,
                  const Matrix& b) {
  require_same_dim(d.matrix(), a);
  require_same_dim(d.matrix(), b);
  require_hermitian(a);
  require_hermitian(b);
  double quad = hs_inner(a, jd_apply(f, d, b)).real();
  double ma = (d.matrix() * a).trace().real();
  double mb = (d.matrix() * b).trace().real();
  return quad - ma * mb;
}

RealMatrix covariance_matrix(const StandardFunction& f, const DensityMatrix& d,
                             const std::vector<Matrix>& observables) {
  if (observables.empty()) throw BadParams("need at least one observable");
  RotatedSet rs = rotate_all(f, d, observables);
  std::size_t m = observables.size();
  RealVector means(m);
  const RealVector& lambda = d.eig().eigenvalues;
  for (std::size_t k = 0; k < m; ++k) {
    double mu = 0.0;
    for (Index i = 0; i < lambda.size(); ++i) mu += lambda[i] * rs.coords[k](i, i).real();
    means[static_cast<Index>(k)] = mu;
  }
  RealMatrix c(m, m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t l = 0; l <= k; ++l) {
      Complex acc(0.0, 0.0);
      for (Index i = 0; i < lambda.size(); ++i)
        for (Index j = 0; j < lambda.size(); ++j)
          acc += std::conj(rs.coords[k](i, j)) * rs.coords[l](i, j) * rs.mk.kernel(i, j);
      double v = acc.real() - means[static_cast<Index>(k)] * means[static_cast<Index>(l)];
      c(static_cast<Index>(k), static_cast<Index>(l)) = v;
      c(static_cast<Index>(l), static_cast<Index>(k)) = v;
    }
  return c;
}

QuadraticForm fisher_quadratic(const StandardFunction& f, const DensityMatrix& d,
                               const Matrix& a) {
  RotatedSet rs = rotate_all(f, d, {a});
  return {gram_entry(rs, 0, 0), rs.masked[0]};
}

double fisher_metric(const StandardFunction& f, const DensityMatrix& d, const Matrix& a,
                     const Matrix& b) {
  RotatedSet rs = rotate_all(f, d, {a, b});
  require_supported(rs, 0, "first tangent");
  require_supported(rs, 1, "second tangent");
  return gram_entry(rs, 0, 1);
}

GramResult fisher_gram(const StandardFunction& f, const DensityMatrix& d,
                       const std::vector<Matrix>& tangents) {
  if (tangents.empty()) throw BadParams("need at least one tangent");
  RotatedSet rs = rotate_all(f, d, tangents);
  std::size_t m = tangents.size();
  GramResult out;
  out.gram.resize(m, m);
  for (std::size_t k = 0; k < m; ++k) {
    out.masked_weight += rs.masked[k];
    for (std::size_t l = 0; l <= k; ++l) {
      double v = gram_entry(rs, k, l);
      out.gram(static_cast<Index>(k), static_cast<Index>(l)) = v;
      out.gram(static_cast<Index>(l), static_cast<Index>(k)) = v;
    }
  }
  return out;
}

RealMatrix qfim(const StandardFunction& f, const ParamFamily& family) {
  std::vector<Matrix> tangents;
  tangents.reserve(family.derivatives().size());
  for (const TangentVector& t : family.derivatives()) tangents.push_back(t.matrix());
  RotatedSet rs = rotate_all(f, family.base(), tangents);
  std::size_t m = tangents.size();
  for (std::size_t k = 0; k < m; ++k) require_supported(rs, k, "family derivative");
  RealMatrix j(m, m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t l = 0; l <= k; ++l) {
      double v = gram_entry(rs, k, l);
      j(static_cast<Index>(k), static_cast<Index>(l)) = v;
      j(static_cast<Index>(l), static_cast<Index>(k)) = v;
    }
  return j;
}

std::vector<Matrix> score_operators(const StandardFunction& f, const ParamFamily& family) {
  std::vector<Matrix> tangents;
  for (const TangentVector& t : family.derivatives()) tangents.push_back(t.matrix());
  RotatedSet rs = rotate_all(f, family.base(), tangents);
  std::vector<Matrix> scores;
  for (std::size_t k = 0; k < tangents.size(); ++k) {
    require_supported(rs, k, "family derivative");
    Matrix lt = rs.coords[k];
    lt.array() *= rs.mk.inverse.cast<Complex>().array();
    Matrix l = family.base().eig().vectors * lt * family.base().eig().vectors.adjoint();
    scores.push_back(0.5 * (l + l.adjoint()));
  }
  return scores;
}

double locally_unbiased_check(const StandardFunction&, const ParamFamily& family,
                              const Matrix& estimator, int i) {
  if (i < 0 || i >= family.param_count()) throw BadParams("parameter index out of range");
  require_same_dim(family.base().matrix(), estimator);
  require_hermitian(estimator);
  // d/dtheta Tr(rho(theta) A) at the footpoint is Tr(B_i A).
  return hs_inner(family.derivatives()[static_cast<std::size_t>(i)].matrix(), estimator)
      .real();
}

CramerRaoCertificate cramer_rao_certificate(const StandardFunction& f,
                                            const ParamFamily& family,
                                            const std::vector<Matrix>& estimators,
                                            double tolerance) {
  int m = family.param_count();
  if (static_cast<int>(estimators.size()) != m)
    throw DimMismatch("need exactly one estimator per parameter");
  for (const Matrix& a : estimators) {
    require_same_dim(family.base().matrix(), a);
    require_hermitian(a);
  }
  std::vector<Matrix> scores = score_operators(f, family);
  RealMatrix j = qfim(f, family);

  std::vector<Matrix> j_scores, j_estimators;
  for (const Matrix& l : scores) j_scores.push_back(jd_apply(f, family.base(), l));
  for (const Matrix& a : estimators) j_estimators.push_back(jd_apply(f, family.base(), a));

  RealMatrix t(m, m), c(m, m);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      t(i, k) = hs_inner(estimators[static_cast<std::size_t>(i)],
                         j_scores[static_cast<std::size_t>(k)])
                    .real();
      c(i, k) = hs_inner(estimators[static_cast<std::size_t>(i)],
                         j_estimators[static_cast<std::size_t>(k)])
                    .real();
    }
  double bias_defect = (t - RealMatrix::Identity(m, m)).cwiseAbs().maxCoeff();
  if (bias_defect > kUnbiasedTol) {
    std::ostringstream os;
    os << "estimators are not locally unbiased (max deviation " << bias_defect << ")";
    throw NotLocallyUnbiased(os.str());
  }
  c = 0.5 * (c + c.transpose());

  Eigen::SelfAdjointEigenSolver<RealMatrix> ej(j);
  if (ej.eigenvalues().minCoeff() <= 1e-14 * std::max(1.0, ej.eigenvalues().maxCoeff()))
    throw SingularState("information matrix is singular; derivatives are dependent");
  RealMatrix jinv = ej.operatorInverseSqrt() * ej.operatorInverseSqrt();

  CramerRaoCertificate cert;
  cert.tolerance = tolerance;
  cert.block.resize(2 * m, 2 * m);
  cert.block.topLeftCorner(m, m) = c;
  cert.block.topRightCorner(m, m) = t;
  cert.block.bottomLeftCorner(m, m) = t.transpose();
  cert.block.bottomRightCorner(m, m) = j;
  cert.gap = c - jinv;
  cert.gap = 0.5 * (cert.gap + cert.gap.transpose());
  Eigen::SelfAdjointEigenSolver<RealMatrix> eg(cert.gap);
  Eigen::SelfAdjointEigenSolver<RealMatrix> eb(
      RealMatrix(0.5 * (cert.block + cert.block.transpose())));
  cert.gap_min_eig = eg.eigenvalues().minCoeff();
  cert.block_min_eig = eb.eigenvalues().minCoeff();
  cert.pass = cert.gap_min_eig >= -tolerance && cert.block_min_eig >= -tolerance;
  return cert;
}

std::vector<Matrix> equality_estimators(const StandardFunction& f,
                                        const ParamFamily& family) {
  std::vector<Matrix> scores = score_operators(f, family);
  RealMatrix j = qfim(f, family);
  Eigen::LDLT<RealMatrix> ldlt(j);
  if (ldlt.info() != Eigen::Success)
    throw SingularState("information matrix is singular; derivatives are dependent");
  int m = family.param_count();
  RealMatrix jinv = ldlt.solve(RealMatrix::Identity(m, m));
  Index n = family.base().dim();
  std::vector<Matrix> est;
  for (int i = 0; i < m; ++i) {
    Matrix a = Matrix::Zero(n, n);
    for (int k = 0; k < m; ++k) a += jinv(i, k) * scores[static_cast<std::size_t>(k)];
    est.push_back(0.5 * (a + a.adjoint()));
  }
  return est;
}

std::vector<Matrix> perturbed_estimators(const StandardFunction& f,
                                         const ParamFamily& family, double scale,
                                         std::uint64_t seed) {
  if (!(scale >= 0.0)) throw BadParams("perturbation scale must be nonnegative");
  std::vector<Matrix> est = equality_estimators(f, family);
  std::vector<Matrix> scores = score_operators(f, family);
  RealMatrix j = qfim(f, family);
  Eigen::LDLT<RealMatrix> ldlt(j);
  Rng rng(seed);
  Index n = family.base().dim();
  int m = family.param_count();
  for (int i = 0; i < m; ++i) {
    Matrix r = random_hermitian(rng, n);
    RealVector v(m);
    Matrix jr = jd_apply(f, family.base(), r);
    for (int k = 0; k < m; ++k)
      v[k] = hs_inner(scores[static_cast<std::size_t>(k)], jr).real();
    RealVector coef = ldlt.solve(v);
    for (int k = 0; k < m; ++k) r -= coef[k] * scores[static_cast<std::size_t>(k)];
    est[static_cast<std::size_t>(i)] += scale * r;
  }
  return est;
}

double skew_information(const StandardFunction& f, const DensityMatrix& d,
                        const Matrix& a) {
  double f0 = f.at_zero();
  if (!(f0 > 0.0))
    throw ParamOutOfRange("skew information needs f(0) > 0; this function has f(0) = 0");
  Matrix c = commutator_tangent(d, a);
  return 0.5 * f0 * fisher_quadratic(f, d, c).value;
}

double wyd_skew(double p, const DensityMatrix& d, const Matrix& a) {
  if (!(p > 0.0 && p < 1.0))
    throw ParamOutOfRange("wyd skew exponent must lie in (0, 1)");
  require_same_dim(d.matrix(), a);
  require_hermitian(a);
  Matrix dp = spectral_power(d.eig(), p);
  Matrix d1p = spectral_power(d.eig(), 1.0 - p);
  Matrix c1 = dp * a - a * dp;
  Matrix c2 = d1p * a - a * d1p;
  return -0.5 * (c1 * c2).trace().real();
}

SkewIdentity skew_vs_covariance_identity(const StandardFunction& f, const DensityMatrix& d,
                                         const Matrix& a) {
  require_same_dim(d.matrix(), a);
  require_hermitian(a);
  double mean_a = (d.matrix() * a).trace().real();
  if (std::abs(mean_a) > kUnbiasedTol) {
    std::ostringstream os;
    os << "observable must be centered, Tr(D a) = " << mean_a;
    throw NotCentered(os.str());
  }
  double f0 = f.at_zero();
  Matrix c = commutator_tangent(d, a);
  double skew = 0.5 * f0 * fisher_quadratic(f, d, c).value;
  SkewIdentity id;
  id.lhs = covariance(sld_function(), d, a, a) - skew;
  id.rhs = covariance(tilde_transform(f), d, a, a);
  return id;
}

double chi2_divergence(double alpha, const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ParamOutOfRange("chi2 exponent must lie in (0, 1)");
  require_same_dim(rho.matrix(), sigma.matrix());
  if (!sigma.strictly_positive())
    throw SingularState("chi2 divergence needs a strictly positive reference state");
  Matrix delta = rho.matrix() - sigma.matrix();
  Matrix sa = spectral_power(sigma.eig(), -alpha);
  Matrix sb = spectral_power(sigma.eig(), alpha - 1.0);
  return (delta * sa * delta * sb).trace().real();
}

Complex extended_metric(const ExtendedMetricSpec& spec, const Matrix& rho, const Matrix& a,
                        const Matrix& b) {
  require_square(rho);
  require_finite(rho);
  require_hermitian(rho);
  require_same_dim(rho, a);
  require_same_dim(rho, b);
  require_finite(a);
  require_finite(b);
  EigDecomposition eig = eig_hermitian(rho);
  double max_eig = eig.eigenvalues.maxCoeff();
  double eps_zero = static_cast<double>(rho.rows()) * 1e-12 * std::max(max_eig, 0.0);
  if (eig.eigenvalues.minCoeff() <= eps_zero)
    throw SingularState("extended metrics need a strictly positive density");

  double trace = eig.eigenvalues.sum();
  double big = 10.0 * std::max(1.0, trace);
  double small = 1e-8 * std::max(1.0, trace);
  auto positive_at = [&spec](double x) { return x * spec.b(x) + spec.c > 0.0; };
  if (!positive_at(trace))
    throw PositivityConditionViolated("x b(x) + c must be positive (fails at x = Tr rho)");
  for (int k = 0; k < 64; ++k) {
    double x = small * std::pow(big / small, k / 63.0);
    if (!positive_at(x)) {
      std::ostringstream os;
      os << "x b(x) + c must be positive; fails at x = " << x;
      throw PositivityConditionViolated(os.str());
    }
  }

  MeanKernel mk = mean_kernel(spec.f, eig.eigenvalues, eps_zero);
  Matrix at = eig.vectors.adjoint() * a * eig.vectors;
  Matrix bt = eig.vectors.adjoint() * b * eig.vectors;
  Complex quad(0.0, 0.0);
  for (Index i = 0; i < at.rows(); ++i)
    for (Index j = 0; j < at.cols(); ++j)
      quad += std::conj(at(i, j)) * bt(i, j) * mk.inverse(i, j);
  return spec.b(trace) * std::conj(a.trace()) * b.trace() + spec.c * quad;
}

double bkm_perturbation_variance(const Matrix& h, const Matrix& a, int n_quad) {
  require_square(h);
  require_same_dim(h, a);
  require_hermitian(h);
  require_hermitian(a);
  if (n_quad < 2) throw BadParams("n_quad must be >= 2");
  EigDecomposition eig = eig_hermitian(h);
  // Gibbs eigenvalues exp(h_i) / sum, shifted for stability.
  RealVector w = (eig.eigenvalues.array() - eig.eigenvalues.maxCoeff()).exp();
  RealVector lambda = w / w.sum();
  EigDecomposition gibbs{lambda, eig.vectors};
  // lambda is ascending because exp is increasing, so this is a valid
  // decomposition of the Gibbs state.
  double mean_a = 0.0;
  Matrix at = eig.vectors.adjoint() * a * eig.vectors;
  for (Index i = 0; i < lambda.size(); ++i) mean_a += lambda[i] * at(i, i).real();
  Matrix a0 = a - mean_a * Matrix::Identity(a.rows(), a.cols());

  Quadrature q = gauss_legendre_unit(n_quad);
  double acc = 0.0;
  for (int k = 0; k < n_quad; ++k) {
    double s = q.nodes[k];
    Matrix rs = spectral_power(gibbs, s);
    Matrix r1s = spectral_power(gibbs, 1.0 - s);
    acc += q.weights[k] * (rs * a0 * r1s * a0).trace().real();
  }
  return acc;
}

}  // namespace qfi
