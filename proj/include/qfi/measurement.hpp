#pragma once

#include <cstdint>
#include <vector>

#include "qfi/metrics.hpp"
#include "qfi/random.hpp"

namespace qfi {

// Positive operator valued measure: effects are PSD and sum to the identity.
class Povm {
 public:
  static Povm create(std::vector<Matrix> effects, double tolerance = tol::psd);
  const std::vector<Matrix>& effects() const { return effects_; }
  Index dim() const { return effects_.front().rows(); }
  int size() const { return static_cast<int>(effects_.size()); }

 private:
  explicit Povm(std::vector<Matrix> effects) : effects_(std::move(effects)) {}
  std::vector<Matrix> effects_;
};

struct OutcomeDistribution {
  std::vector<double> probs;
};
OutcomeDistribution outcome_probs(const DensityMatrix& d, const Povm& povm);

inline constexpr double kEpsProb = 1e-12;

// Classical Fisher information matrix of the measured family: outcomes k
// with p_k are directions dp_ik = Tr(B_i E_k); F_ij = sum_k dp_ik dp_jk / p_k.
// Outcomes with p_k <= eps are skipped only if every direction vanishes
// there too; otherwise ZeroProbabilityOutcomeWithSignal.
RealMatrix classical_fisher(const DensityMatrix& d, const std::vector<Matrix>& tangents,
                            const Povm& povm, double eps_prob = kEpsProb);

// The observable solving D C + C D = 2 b (the sld-metric inverse applied to
// b); requires a strictly positive state.
Matrix sld_optimal_observable(const DensityMatrix& d, const Matrix& b);

// Projective measurement in the eigenbasis of the optimal observable
// (eigenvalue clusters merged into single projectors).
Povm optimal_measurement(const DensityMatrix& d, const Matrix& b);

// Certifies sup over measurements of the classical Fisher information of a
// one-parameter direction: bound = gamma_sld(b, b), attained by the optimal
// measurement, never exceeded by random measurements.
struct SupremumCertificate {
  double bound = 0.0;
  double attained = 0.0;
  double max_random = 0.0;
  bool pass = false;
  double tolerance = 0.0;
};
SupremumCertificate supremum_certificate(const DensityMatrix& d, const Matrix& b,
                                         int n_random_povms, std::uint64_t seed,
                                         double tolerance = 1e-8);

// Random measurements for the sweeps: a Haar projective basis, and a
// generic rank-one POVM obtained from the adjoint of a random channel.
Povm random_projective_povm(Rng& rng, Index n);
Povm random_povm(Rng& rng, Index n, int n_outcomes);

}  // namespace qfi
