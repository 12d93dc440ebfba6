#include "qfi/channel.hpp"

#include <sstream>

#include "qfi/measurement.hpp"
#include "qfi/random.hpp"

namespace qfi {

KrausChannel KrausChannel::create(std::vector<Matrix> kraus_ops, double tolerance) {
  if (kraus_ops.empty()) throw BadParams("a channel needs at least one Kraus operator");
  Index rows = kraus_ops.front().rows();
  Index cols = kraus_ops.front().cols();
  if (rows <= 0 || cols <= 0) throw DimMismatch("Kraus operators must be nonempty");
  Matrix acc = Matrix::Zero(cols, cols);
  for (const Matrix& k : kraus_ops) {
    if (k.rows() != rows || k.cols() != cols)
      throw DimMismatch("Kraus operators must share one shape");
    require_finite(k);
    acc += k.adjoint() * k;
  }
  double defect = (acc - Matrix::Identity(cols, cols)).cwiseAbs().maxCoeff();
  if (defect > tolerance) {
    std::ostringstream os;
    os << "channel is not trace preserving (sum K*K deviates from I by " << defect << ")";
    throw NotTracePreserving(os.str());
  }
  return KrausChannel(std::move(kraus_ops));
}

KrausChannel KrausChannel::identity(Index n) {
  if (n <= 0) throw BadParams("dimension must be positive");
  return KrausChannel({Matrix::Identity(n, n)});
}

Matrix KrausChannel::apply(const Matrix& m) const {
  if (m.rows() != dim_in() || m.cols() != dim_in())
    throw DimMismatch("channel input dimension mismatch");
  Matrix out = Matrix::Zero(dim_out(), dim_out());
  for (const Matrix& k : kraus_) out += k * m * k.adjoint();
  return out;
}

Matrix KrausChannel::adjoint_apply(const Matrix& m) const {
  if (m.rows() != dim_out() || m.cols() != dim_out())
    throw DimMismatch("channel adjoint input dimension mismatch");
  Matrix out = Matrix::Zero(dim_in(), dim_in());
  for (const Matrix& k : kraus_) out += k.adjoint() * m * k;
  return out;
}

KrausChannel random_channel(Index n_in, Index n_out, int kraus_rank, std::uint64_t seed) {
  if (n_in <= 0 || n_out <= 0 || kraus_rank < 1)
    throw BadParams("channel dimensions and rank must be positive");
  if (n_out * kraus_rank < n_in)
    throw BadParams("n_out * kraus_rank must be >= n_in for an isometry to exist");
  Rng rng(seed);
  Matrix u = random_unitary(rng, n_out * kraus_rank);
  Matrix isometry = u.leftCols(n_in);
  std::vector<Matrix> kraus;
  kraus.reserve(static_cast<std::size_t>(kraus_rank));
  for (int j = 0; j < kraus_rank; ++j)
    kraus.push_back(isometry.middleRows(static_cast<Index>(j) * n_out, n_out));
  return KrausChannel::create(std::move(kraus));
}

KrausChannel pinching_from_povm(const Povm& povm) {
  const double tol_proj = 1e-8;
  const std::vector<Matrix>& effects = povm.effects();
  for (std::size_t a = 0; a < effects.size(); ++a) {
    double idem = (effects[a] * effects[a] - effects[a]).cwiseAbs().maxCoeff();
    if (idem > tol_proj) {
      std::ostringstream os;
      os << "effect " << a << " is not idempotent (defect " << idem << ")";
      throw NotProjective(os.str());
    }
    for (std::size_t b = a + 1; b < effects.size(); ++b) {
      double cross = (effects[a] * effects[b]).cwiseAbs().maxCoeff();
      if (cross > tol_proj) {
        std::ostringstream os;
        os << "effects " << a << " and " << b << " are not orthogonal";
        throw NotProjective(os.str());
      }
    }
  }
  return KrausChannel::create(effects);
}

GapReport metric_monotonicity_gap(const StandardFunction& f, const KrausChannel& ch,
                                  const DensityMatrix& d, const Matrix& a) {
  require_same_dim(d.matrix(), a);
  if (d.dim() != ch.dim_in()) throw DimMismatch("channel input dimension mismatch");
  require_hermitian(a);
  DensityMatrix image = DensityMatrix::validate(ch.apply(d.matrix()));
  Matrix a_image = ch.apply(a);
  a_image = 0.5 * (a_image + a_image.adjoint());
  QuadraticForm before = fisher_quadratic(f, d, a);
  QuadraticForm after = fisher_quadratic(f, image, a_image);
  return {before.value - after.value, before.masked_weight + after.masked_weight};
}

GapReport metric_monotonicity_gap(const StandardFunction& f, const KrausChannel& ch,
                                  const DensityMatrix& d, const TangentVector& a) {
  return metric_monotonicity_gap(f, ch, d, a.matrix());
}

QfimGapReport qfim_monotonicity_gap(const StandardFunction& f, const KrausChannel& ch,
                                    const ParamFamily& family) {
  if (family.base().dim() != ch.dim_in())
    throw DimMismatch("channel input dimension mismatch");
  std::vector<Matrix> tangents, image_tangents;
  for (const TangentVector& t : family.derivatives()) {
    tangents.push_back(t.matrix());
    Matrix bt = ch.apply(t.matrix());
    image_tangents.push_back(0.5 * (bt + bt.adjoint()));
  }
  DensityMatrix image = DensityMatrix::validate(ch.apply(family.base().matrix()));
  GramResult before = fisher_gram(f, family.base(), tangents);
  GramResult after = fisher_gram(f, image, image_tangents);
  QfimGapReport report;
  report.gap = before.gram - after.gram;
  report.gap = 0.5 * (report.gap + report.gap.transpose());
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(report.gap);
  report.min_eigenvalue = es.eigenvalues().minCoeff();
  report.masked_weight = before.masked_weight + after.masked_weight;
  return report;
}

}  // namespace qfi
