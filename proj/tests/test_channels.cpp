#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "qfi/channel.hpp"
#include "qfi/measurement.hpp"
#include "qfi/random.hpp"

using namespace qfi;
using namespace testutil;

namespace {

KrausChannel depolarizing(double p) {
  double keep = std::sqrt(1.0 - 0.75 * p);
  double flip = 0.5 * std::sqrt(p);
  return KrausChannel::create(
      {keep * Matrix::Identity(2, 2), flip * sigma_x(), flip * sigma_y(),
       flip * sigma_z()});
}

ParamFamily qubit_family(const DensityMatrix& d) {
  std::vector<TangentVector> t;
  t.push_back(TangentVector::make(0.1 * sigma_x()));
  t.push_back(TangentVector::make(0.1 * sigma_z()));
  return ParamFamily(d, std::move(t));
}

}  // namespace

TEST_CASE("kraus channel validation and identity") {
  CHECK_THROWS_AS(KrausChannel::create({0.5 * Matrix::Identity(2, 2)}),
                  NotTracePreserving);
  Rng rng(51);
  Matrix m = random_hermitian(rng, 3);
  CHECK(max_abs_diff(KrausChannel::identity(3).apply(m), m) < 1e-14);
}

TEST_CASE("depolarizing at full strength sends everything to the mixed state") {
  KrausChannel ch = depolarizing(1.0);
  Rng rng(52);
  DensityMatrix d = random_density(rng, 2);
  CHECK(max_abs_diff(ch.apply(d.matrix()), 0.5 * Matrix::Identity(2, 2)) < 1e-12);
}

TEST_CASE("apply preserves trace and positivity") {
  Rng rng(53);
  for (int k = 0; k < 25; ++k) {
    Index n_in = 2 + k % 3;
    Index n_out = 2 + (k / 3) % 3;
    KrausChannel ch = random_channel(n_in, n_out, 1 + k % 3, 500 + k);
    DensityMatrix d = random_density(rng, n_in);
    Matrix out = ch.apply(d.matrix());
    CHECK(std::abs(out.trace().real() - 1.0) < 1e-10);
    CHECK(eig_hermitian(out).eigenvalues.minCoeff() > -1e-10);
  }
}

TEST_CASE("adjoint is unital and adjoint") {
  Rng rng(54);
  for (int k = 0; k < 20; ++k) {
    Index n_in = 2 + k % 3;
    Index n_out = 2 + (k / 2) % 3;
    int rank = 1 + k % 2;
    if (n_out * rank < n_in) rank = 2;
    KrausChannel ch = random_channel(n_in, n_out, rank, 600 + k);
    Matrix unital = ch.adjoint_apply(Matrix::Identity(n_out, n_out));
    CHECK(max_abs_diff(unital, Matrix::Identity(n_in, n_in)) < 1e-10);

    Matrix a = random_hermitian(rng, n_in);
    Matrix b = random_hermitian(rng, n_out);
    Complex lhs = hs_inner(ch.apply(a), b);
    Complex rhs = hs_inner(a, ch.adjoint_apply(b));
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("random_channel is an isometry slicing") {
  for (int k = 0; k < 10; ++k) {
    KrausChannel ch = random_channel(3, 2, 2, 70 + k);
    Matrix sum = Matrix::Zero(3, 3);
    for (const Matrix& op : ch.kraus()) sum += op.adjoint() * op;
    CHECK(max_abs_diff(sum, Matrix::Identity(3, 3)) < 1e-12);
  }
  KrausChannel a = random_channel(2, 2, 2, 9);
  KrausChannel b = random_channel(2, 2, 2, 9);
  for (std::size_t i = 0; i < a.kraus().size(); ++i)
    CHECK(max_abs_diff(a.kraus()[i], b.kraus()[i]) == 0.0);

  // rank 1 with equal dims is a unitary conjugation
  KrausChannel u = random_channel(3, 3, 1, 5);
  CHECK(max_abs_diff(u.kraus()[0].adjoint() * u.kraus()[0], Matrix::Identity(3, 3)) <
        1e-12);

  CHECK_THROWS_AS(random_channel(4, 2, 1, 1), BadParams);
  CHECK_THROWS_AS(random_channel(2, 2, 0, 1), BadParams);
}

TEST_CASE("pinching channels") {
  Matrix p0 = Matrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  Matrix p1 = Matrix::Zero(2, 2);
  p1(1, 1) = 1.0;
  KrausChannel pinch = pinching_from_povm(Povm::create({p0, p1}));
  Rng rng(55);
  Matrix m = random_hermitian(rng, 2);
  Matrix out = pinch.apply(m);
  CHECK(out(0, 0) == m(0, 0));
  CHECK(std::abs(out(0, 1)) < 1e-14);

  // Self-adjointness of pinching.
  Matrix b = random_hermitian(rng, 2);
  CHECK(std::abs(hs_inner(pinch.apply(m), b) - hs_inner(m, pinch.apply(b))) < 1e-12);

  // Block pinching with a rank-2 + rank-1 projector in dim 3.
  Matrix q0 = Matrix::Zero(3, 3);
  q0(0, 0) = q0(1, 1) = 1.0;
  Matrix q1 = Matrix::Zero(3, 3);
  q1(2, 2) = 1.0;
  KrausChannel block = pinching_from_povm(Povm::create({q0, q1}));
  Matrix m3 = random_hermitian(rng, 3);
  Matrix out3 = block.apply(m3);
  CHECK(out3(0, 1) == m3(0, 1));  // inside the rank-2 block
  CHECK(std::abs(out3(0, 2)) < 1e-14);
  CHECK(std::abs(out3(1, 2)) < 1e-14);

  Povm not_projective = Povm::create(
      {0.5 * Matrix::Identity(2, 2), 0.5 * Matrix::Identity(2, 2)});
  CHECK_THROWS_AS(pinching_from_povm(not_projective), NotProjective);
}

TEST_CASE("metric gap vanishes for identity and unitary channels") {
  Rng rng(56);
  DensityMatrix d = random_density(rng, 3, 0.02);
  Matrix a = random_traceless_hermitian(rng, 3);
  for (const StandardFunction& f : catalog()) {
    GapReport id_gap = metric_monotonicity_gap(f, KrausChannel::identity(3), d, a);
    CHECK(std::abs(id_gap.gap) < 1e-9);

    Matrix u = random_unitary(rng, 3);
    KrausChannel rotation = KrausChannel::create({u});
    GapReport u_gap = metric_monotonicity_gap(f, rotation, d, a);
    CHECK(std::abs(u_gap.gap) < 1e-9);
  }
}

TEST_CASE("metric gap is nonnegative for random qubit channels") {
  Rng rng(57);
  for (int seed = 0; seed < 100; ++seed) {
    KrausChannel ch = random_channel(2, 2, 2, 1000 + seed);
    DensityMatrix d = random_density(rng, 2, 0.01);
    Matrix a = random_traceless_hermitian(rng, 2);
    GapReport gap = metric_monotonicity_gap(sld_function(), ch, d, a);
    CHECK(gap.gap >= -1e-8);
  }
}

TEST_CASE("qfim gap closed cases") {
  Rng rng(58);
  DensityMatrix d = random_density(rng, 2, 0.05);
  ParamFamily family = qubit_family(d);

  QfimGapReport id_gap =
      qfim_monotonicity_gap(sld_function(), KrausChannel::identity(2), family);
  CHECK(max_abs_diff(id_gap.gap, RealMatrix::Zero(2, 2)) < 1e-10);

  // Pinching in the eigenbasis of a commuting (classical) family changes nothing.
  DensityMatrix diag = diag_state({0.25, 0.75});
  std::vector<TangentVector> t;
  Matrix b1(2, 2);
  b1 << 0.1, 0, 0, -0.1;
  Matrix b2(2, 2);
  b2 << 0.05, 0, 0, -0.05;
  t.push_back(TangentVector::make(b1));
  t.push_back(TangentVector::make(b2));
  ParamFamily classical(diag, std::move(t));
  Matrix p0 = Matrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  Matrix p1 = Matrix::Zero(2, 2);
  p1(1, 1) = 1.0;
  KrausChannel pinch = pinching_from_povm(Povm::create({p0, p1}));
  QfimGapReport pin_gap = qfim_monotonicity_gap(sld_function(), pinch, classical);
  CHECK(max_abs_diff(pin_gap.gap, RealMatrix::Zero(2, 2)) < 1e-10);

  // Depolarizing strictly loses information on a generic family.
  QfimGapReport dep_gap = qfim_monotonicity_gap(sld_function(), depolarizing(0.5), family);
  CHECK(min_eig(dep_gap.gap) > 1e-4);
}

TEST_CASE("qfim gap is psd for random channels and functions") {
  Rng rng(59);
  for (int k = 0; k < 30; ++k) {
    Index n_in = 2 + k % 2;
    KrausChannel ch = random_channel(n_in, 2 + (k / 2) % 2, 1 + k % 2, 2000 + k);
    DensityMatrix d = random_density(rng, n_in, 0.02);
    std::vector<TangentVector> t;
    t.push_back(TangentVector::make(random_traceless_hermitian(rng, n_in)));
    t.push_back(TangentVector::make(random_traceless_hermitian(rng, n_in)));
    ParamFamily family(d, std::move(t));
    const std::vector<StandardFunction> fs = catalog();
    const StandardFunction& f = fs[static_cast<std::size_t>(k) % fs.size()];
    QfimGapReport gap = qfim_monotonicity_gap(f, ch, family);
    CHECK(gap.min_eigenvalue > -1e-8);
  }
}

TEST_CASE("channel-level operator inequality") {
  // <Y, beta(J_D(beta*(Y)))> <= <Y, J_beta(D)(Y)> for Hermitian Y.
  Rng rng(60);
  for (int k = 0; k < 25; ++k) {
    Index n_in = 2 + k % 3;
    Index n_out = 2 + (k / 2) % 3;
    int rank = 1 + k % 2;
    if (n_out * rank < n_in) rank = 2;
    KrausChannel ch = random_channel(n_in, n_out, rank, 3000 + k);
    DensityMatrix d = random_density(rng, n_in, 0.01);
    DensityMatrix d_out = DensityMatrix::validate(ch.apply(d.matrix()));
    Matrix y = random_hermitian(rng, n_out);
    for (const StandardFunction& f : catalog()) {
      double lhs = hs_inner(y, ch.apply(jd_apply(f, d, ch.adjoint_apply(y)))).real();
      double rhs = hs_inner(y, jd_apply(f, d_out, y)).real();
      CHECK(lhs <= rhs + 1e-8);
    }
  }
}

TEST_CASE("variance contracts under the adjoint channel") {
  Rng rng(61);
  for (int k = 0; k < 25; ++k) {
    Index n_in = 2 + k % 3;
    Index n_out = 2 + (k / 2) % 3;
    int rank = 1 + k % 2;
    if (n_out * rank < n_in) rank = 2;
    KrausChannel ch = random_channel(n_in, n_out, rank, 4000 + k);
    DensityMatrix d = random_density(rng, n_in, 0.01);
    DensityMatrix d_out = DensityMatrix::validate(ch.apply(d.matrix()));
    Matrix a = random_hermitian(rng, n_out);
    for (const StandardFunction& f : catalog()) {
      double var_in = covariance(f, d, ch.adjoint_apply(a), ch.adjoint_apply(a));
      double var_out = covariance(f, d_out, a, a);
      CHECK(var_in <= var_out + 1e-8);
    }
  }
}

TEST_CASE("dimension mismatches are rejected") {
  DensityMatrix d = diag_state({0.25, 0.75});
  KrausChannel ch = random_channel(3, 3, 1, 1);
  CHECK_THROWS_AS(ch.apply(d.matrix()), DimMismatch);
  CHECK_THROWS_AS(metric_monotonicity_gap(sld_function(), ch, d, sigma_x()),
                  DimMismatch);
}
