#include "qfi/measurement.hpp"

#include <cmath>
#include <sstream>

#include "qfi/channel.hpp"

namespace qfi {

Povm Povm::create(std::vector<Matrix> effects, double tolerance) {
  if (effects.empty()) throw BadParams("a POVM needs at least one effect");
  Index n = effects.front().rows();
  Matrix sum = Matrix::Zero(n, n);
  for (Matrix& e : effects) {
    require_square(e);
    if (e.rows() != n) throw DimMismatch("POVM effects must share one dimension");
    require_finite(e);
    require_hermitian(e);
    e = 0.5 * (e + e.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(e);
    if (es.eigenvalues().minCoeff() < -tolerance) {
      std::ostringstream os;
      os << "effect has negative eigenvalue " << es.eigenvalues().minCoeff();
      throw NotPsd(os.str());
    }
    sum += e;
  }
  double defect = (sum - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (defect > 1e-10) {
    std::ostringstream os;
    os << "effects must sum to the identity (deviation " << defect << ")";
    throw BadParams(os.str());
  }
  return Povm(std::move(effects));
}

OutcomeDistribution outcome_probs(const DensityMatrix& d, const Povm& povm) {
  OutcomeDistribution dist;
  dist.probs.reserve(static_cast<std::size_t>(povm.size()));
  for (const Matrix& e : povm.effects()) {
    require_same_dim(d.matrix(), e);
    double p = (d.matrix() * e).trace().real();
    if (p < -kEpsProb) {
      std::ostringstream os;
      os << "outcome probability " << p << " below tolerance";
      throw NotPsd(os.str());
    }
    dist.probs.push_back(std::max(p, 0.0));
  }
  return dist;
}

RealMatrix classical_fisher(const DensityMatrix& d, const std::vector<Matrix>& tangents,
                            const Povm& povm, double eps_prob) {
  if (tangents.empty()) throw BadParams("need at least one tangent");
  for (const Matrix& b : tangents) {
    require_same_dim(d.matrix(), b);
    require_hermitian(b);
  }
  std::size_t m = tangents.size();
  RealMatrix fisher = RealMatrix::Zero(static_cast<Index>(m), static_cast<Index>(m));
  std::vector<double> dp(m);
  for (int k = 0; k < povm.size(); ++k) {
    const Matrix& e = povm.effects()[static_cast<std::size_t>(k)];
    double p = (d.matrix() * e).trace().real();
    double max_signal = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      dp[i] = (tangents[i] * e).trace().real();
      max_signal = std::max(max_signal, std::abs(dp[i]));
    }
    if (p <= eps_prob) {
      if (max_signal <= eps_prob) continue;  // dead outcome, no information
      std::ostringstream os;
      os << "outcome " << k << " has probability " << p << " but signal " << max_signal;
      throw ZeroProbabilityOutcomeWithSignal(os.str());
    }
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        fisher(static_cast<Index>(i), static_cast<Index>(j)) += dp[i] * dp[j] / p;
  }
  return 0.5 * (fisher + fisher.transpose());
}

Matrix sld_optimal_observable(const DensityMatrix& d, const Matrix& b) {
  require_same_dim(d.matrix(), b);
  require_hermitian(b);
  if (!d.strictly_positive())
    throw SingularState("optimal observable needs a strictly positive state");
  Matrix c = jd_inverse_apply(sld_function(), d, b);
  return 0.5 * (c + c.adjoint());
}

Povm optimal_measurement(const DensityMatrix& d, const Matrix& b) {
  Matrix c = sld_optimal_observable(d, b);
  EigDecomposition eig = eig_hermitian(c);
  double scale = eig.eigenvalues.cwiseAbs().maxCoeff();
  double eps_cluster = static_cast<double>(d.dim()) * 1e-12 * std::max(1.0, scale);
  auto clusters = cluster_eigenvalues(eig.eigenvalues, eps_cluster);
  std::vector<Matrix> effects;
  effects.reserve(clusters.size());
  for (const auto& [begin, end] : clusters) {
    Matrix block = eig.vectors.middleCols(begin, end - begin);
    effects.push_back(block * block.adjoint());
  }
  return Povm::create(std::move(effects));
}

Povm random_projective_povm(Rng& rng, Index n) {
  Matrix u = random_unitary(rng, n);
  std::vector<Matrix> effects;
  effects.reserve(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k)
    effects.push_back(u.col(k) * u.col(k).adjoint());
  return Povm::create(std::move(effects));
}

Povm random_povm(Rng& rng, Index n, int n_outcomes) {
  if (n_outcomes < 1) throw BadParams("need at least one outcome");
  // Effects K_k^dagger K_k of a random channel are PSD and sum to I.
  std::uint64_t seed = rng.engine()();
  KrausChannel ch = random_channel(n, n, n_outcomes, seed);
  std::vector<Matrix> effects;
  effects.reserve(ch.kraus().size());
  for (const Matrix& k : ch.kraus()) effects.push_back(k.adjoint() * k);
  return Povm::create(std::move(effects));
}

SupremumCertificate supremum_certificate(const DensityMatrix& d, const Matrix& b,
                                         int n_random_povms, std::uint64_t seed,
                                         double tolerance) {
  if (n_random_povms < 0) throw BadParams("n_random_povms must be nonnegative");
  SupremumCertificate cert;
  cert.tolerance = tolerance;
  Matrix c = sld_optimal_observable(d, b);
  cert.bound = hs_inner(b, c).real();
  Povm opt = optimal_measurement(d, b);
  cert.attained = classical_fisher(d, {b}, opt)(0, 0);
  Rng rng(seed);
  cert.max_random = 0.0;
  for (int i = 0; i < n_random_povms; ++i) {
    Povm povm = (i % 2 == 0)
                    ? random_projective_povm(rng, d.dim())
                    : random_povm(rng, d.dim(), 2 + i % (2 * static_cast<int>(d.dim())));
    double value = classical_fisher(d, {b}, povm)(0, 0);
    cert.max_random = std::max(cert.max_random, value);
  }
  cert.pass = cert.attained >= cert.bound - tolerance &&
              cert.attained <= cert.bound + tolerance &&
              cert.max_random <= cert.bound + tolerance;
  return cert;
}

}  // namespace qfi
