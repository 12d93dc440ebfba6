#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qfi/superop.hpp"

namespace qfi {

// Hermitian direction at a state; the traceless flag records whether it can
// arise as the derivative of a curve of density matrices.
class TangentVector {
 public:
  static TangentVector make(const Matrix& m, double tol_herm = tol::herm);
  const Matrix& matrix() const { return mat_; }
  bool traceless() const { return traceless_; }

 private:
  TangentVector(Matrix m, bool traceless) : mat_(std::move(m)), traceless_(traceless) {}
  Matrix mat_;
  bool traceless_;
};

// Smooth parametric family at a point: base state plus the partial
// derivatives (traceless Hermitian, one per parameter).
class ParamFamily {
 public:
  ParamFamily(DensityMatrix base, std::vector<TangentVector> derivatives);
  const DensityMatrix& base() const { return base_; }
  const std::vector<TangentVector>& derivatives() const { return derivatives_; }
  int param_count() const { return static_cast<int>(derivatives_.size()); }

 private:
  DensityMatrix base_;
  std::vector<TangentVector> derivatives_;
};

// --- covariances -----------------------------------------------------------

// Cov_f(a, b) = Re <a, J_f,D b> - Tr(D a) Tr(D b) for Hermitian observables.
double covariance(const StandardFunction& f, const DensityMatrix& d, const Matrix& a,
                  const Matrix& b);
RealMatrix covariance_matrix(const StandardFunction& f, const DensityMatrix& d,
                             const std::vector<Matrix>& observables);

// --- the metric ------------------------------------------------------------

// gamma_f,D(a, a) through the Moore-Penrose inverse, never throwing on
// singular states: masked_weight reports how much of |a|^2 (eigenbasis
// coordinates, squared Frobenius mass) fell outside the support.
struct QuadraticForm {
  double value = 0.0;
  double masked_weight = 0.0;
};
QuadraticForm fisher_quadratic(const StandardFunction& f, const DensityMatrix& d,
                               const Matrix& a);

// gamma_f,D(a, b) = <a, J_f,D^{-1} b>; throws UnsupportedTangent when either
// argument has significant mass outside the kernel support.
double fisher_metric(const StandardFunction& f, const DensityMatrix& d, const Matrix& a,
                     const Matrix& b);

inline double fisher_metric(const StandardFunction& f, const DensityMatrix& d,
                            const TangentVector& a, const TangentVector& b) {
  return fisher_metric(f, d, a.matrix(), b.matrix());
}

// Gram matrix gamma(a_i, a_j) over a tangent list via the Moore-Penrose
// route, plus the total masked mass (used by the channel-monotonicity gaps).
struct GramResult {
  RealMatrix gram;
  double masked_weight = 0.0;
};
GramResult fisher_gram(const StandardFunction& f, const DensityMatrix& d,
                       const std::vector<Matrix>& tangents);

// Quantum Fisher information matrix J_ij = gamma_f(d_i rho, d_j rho).
RealMatrix qfim(const StandardFunction& f, const ParamFamily& family);

// L_i = J_f,D^{-1}(d_i rho): the scores / logarithmic derivatives.
std::vector<Matrix> score_operators(const StandardFunction& f, const ParamFamily& family);

// Re Tr(estimator * J_f,D(L_i)) — equals delta_ij for locally unbiased
// estimators of parameter i.
double locally_unbiased_check(const StandardFunction& f, const ParamFamily& family,
                              const Matrix& estimator, int i);

// --- Cramer-Rao ------------------------------------------------------------

struct CramerRaoCertificate {
  RealMatrix block;        // [[C, T], [T^t, J]] in the <.,.>_J inner product
  RealMatrix gap;          // C - J^{-1}
  double gap_min_eig = 0.0;
  double block_min_eig = 0.0;
  bool pass = false;
  double tolerance = 0.0;
};

// Certifies C >= J^{-1} for locally unbiased estimators; throws
// NotLocallyUnbiased if Tr(A_i J(L_j)) deviates from delta_ij beyond 1e-8.
CramerRaoCertificate cramer_rao_certificate(const StandardFunction& f,
                                            const ParamFamily& family,
                                            const std::vector<Matrix>& estimators,
                                            double tolerance = 1e-8);

// The estimators attaining equality: A_i = sum_j (J^{-1})_ij L_j.
std::vector<Matrix> equality_estimators(const StandardFunction& f,
                                        const ParamFamily& family);
// Equality estimators plus a J-orthogonal random Hermitian perturbation of
// the given scale — still locally unbiased, with a strictly larger C.
std::vector<Matrix> perturbed_estimators(const StandardFunction& f,
                                         const ParamFamily& family, double scale,
                                         std::uint64_t seed);

// --- skew information and friends ------------------------------------------

// I_f(a) = f(0)/2 * gamma_f,D(i[D,a], i[D,a]); requires f(0) > 0.
double skew_information(const StandardFunction& f, const DensityMatrix& d,
                        const Matrix& a);
// I_p(a) = -1/2 Tr([D^p, a][D^{1-p}, a]) computed by actual matrix products;
// equals skew_information(wyd(p), ...) exactly.
double wyd_skew(double p, const DensityMatrix& d, const Matrix& a);

// Both sides of Cov_sld(a,a) - I_f(a) = Cov_tilde(f)(a,a) for centered a
// (Tr D a = 0); throws NotCentered otherwise.
struct SkewIdentity {
  double lhs = 0.0;
  double rhs = 0.0;
};
SkewIdentity skew_vs_covariance_identity(const StandardFunction& f,
                                         const DensityMatrix& d, const Matrix& a);

// chi^2_alpha(rho, sigma) = Tr((rho-sigma) sigma^{-alpha} (rho-sigma) sigma^{alpha-1});
// sigma must be strictly positive. Equals gamma_{f_alpha,sigma}(rho-sigma, rho-sigma).
double chi2_divergence(double alpha, const DensityMatrix& rho, const DensityMatrix& sigma);

// --- extended (non-normalized) metrics --------------------------------------

// K_rho(a, b) = b(Tr rho) conj(Tr a) Tr b + c <a, J_f,rho^{-1} b> on positive
// definite rho (not necessarily unit trace). Requires x b(x) + c > 0 sampled
// over the relevant range.
struct ExtendedMetricSpec {
  StandardFunction f;
  std::function<double(double)> b;
  double c = 1.0;
};
Complex extended_metric(const ExtendedMetricSpec& spec, const Matrix& rho, const Matrix& a,
                        const Matrix& b);

// Variance of the bkm perturbation family rho_t ~ exp(h + t a): equals
// Cov_bkm at the normalized Gibbs state of h, computed via the independent
// Duhamel integral int_0^1 Tr(rho^s a0 rho^{1-s} a0) ds with a0 centered.
double bkm_perturbation_variance(const Matrix& h, const Matrix& a, int n_quad = 96);

}  // namespace qfi
