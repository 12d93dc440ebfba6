#pragma once

#include <cstdint>
#include <vector>

#include "qfi/metrics.hpp"

namespace qfi {

class Povm;  // measurement.hpp

// Completely positive trace-preserving map in Kraus form; operators are
// n_out x n_in and satisfy sum_k K_k^dagger K_k = I within 1e-10.
class KrausChannel {
 public:
  static KrausChannel create(std::vector<Matrix> kraus_ops, double tolerance = 1e-10);
  static KrausChannel identity(Index n);

  Index dim_in() const { return kraus_.front().cols(); }
  Index dim_out() const { return kraus_.front().rows(); }
  const std::vector<Matrix>& kraus() const { return kraus_; }

  Matrix apply(const Matrix& m) const;          // sum_k K m K^dagger
  Matrix adjoint_apply(const Matrix& m) const;  // sum_k K^dagger m K (unital)

 private:
  explicit KrausChannel(std::vector<Matrix> kraus) : kraus_(std::move(kraus)) {}
  std::vector<Matrix> kraus_;
};

// Haar random isometry from C^n_in into C^(n_out * kraus_rank), sliced into
// kraus_rank operators. Deterministic in the seed.
KrausChannel random_channel(Index n_in, Index n_out, int kraus_rank, std::uint64_t seed);

// Pinching A -> sum_k P_k A P_k for a projective POVM (effects idempotent and
// mutually orthogonal within 1e-8); throws NotProjective otherwise.
KrausChannel pinching_from_povm(const Povm& povm);

// gamma_f,D(A,A) - gamma_f,ch(D)(ch(A), ch(A)); the theorem guarantees >= 0.
// Both sides run through the Moore-Penrose branch; masked_weight accumulates
// the tangent mass that fell outside either kernel support so callers can
// spot the degenerate regime.
struct GapReport {
  double gap = 0.0;
  double masked_weight = 0.0;
};
GapReport metric_monotonicity_gap(const StandardFunction& f, const KrausChannel& ch,
                                  const DensityMatrix& d, const TangentVector& a);
GapReport metric_monotonicity_gap(const StandardFunction& f, const KrausChannel& ch,
                                  const DensityMatrix& d, const Matrix& a);

// J_1(theta) - J_2(theta) for the image family under the channel.
struct QfimGapReport {
  RealMatrix gap;
  double min_eigenvalue = 0.0;
  double masked_weight = 0.0;
};
QfimGapReport qfim_monotonicity_gap(const StandardFunction& f, const KrausChannel& ch,
                                    const ParamFamily& family);

}  // namespace qfi
