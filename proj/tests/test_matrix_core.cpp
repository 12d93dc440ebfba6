#include <doctest.h>

#include "helpers.hpp"
#include "qfi/matrix.hpp"
#include "qfi/random.hpp"

using namespace qfi;
using namespace testutil;

TEST_CASE("validate accepts the maximally mixed state") {
  DensityMatrix d = DensityMatrix::validate(0.5 * Matrix::Identity(2, 2));
  CHECK(d.strictly_positive());
  CHECK(d.dim() == 2);
}

TEST_CASE("validate flags pure states as not strictly positive") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  DensityMatrix d = DensityMatrix::validate(m);
  CHECK_FALSE(d.strictly_positive());
  CHECK(d.eps_zero() > 0.0);
}

TEST_CASE("validate rejects bad states") {
  Matrix wrong_trace = Matrix::Zero(2, 2);
  wrong_trace(0, 0) = 0.6;
  wrong_trace(1, 1) = 0.6;
  CHECK_THROWS_AS(DensityMatrix::validate(wrong_trace), TraceNotOne);

  Matrix not_herm(2, 2);
  not_herm << 0.5, 0.3, 0.0, 0.5;
  CHECK_THROWS_AS(DensityMatrix::validate(not_herm), NotHermitian);

  Matrix not_psd(2, 2);
  not_psd << 1.2, 0.0, 0.0, -0.2;
  CHECK_THROWS_AS(DensityMatrix::validate(not_psd), NotPsd);

  Matrix nan_mat = Matrix::Constant(2, 2, std::nan(""));
  CHECK_THROWS_AS(DensityMatrix::validate(nan_mat), Error);
}

TEST_CASE("eig_hermitian on simple spectra") {
  DensityMatrix d = diag_state({0.25, 0.75});
  CHECK(d.eig().eigenvalues[0] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(d.eig().eigenvalues[1] == doctest::Approx(0.75).epsilon(1e-14));

  EigDecomposition eig = eig_hermitian(sigma_x());
  CHECK(eig.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(eig.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
  // Columns are (1, -1)/sqrt 2 and (1, 1)/sqrt 2 up to phase.
  CHECK(std::abs(std::abs(eig.vectors(0, 0)) - 1.0 / std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("eig_hermitian round trip on random matrices") {
  Rng rng(11);
  for (int k = 0; k < 200; ++k) {
    Index n = 2 + k % 7;
    Matrix m = random_hermitian(rng, n);
    EigDecomposition eig = eig_hermitian(m);
    Matrix recon = eig.vectors * eig.eigenvalues.cast<Complex>().asDiagonal() *
                   eig.vectors.adjoint();
    CHECK((recon - m).norm() <= 1e-9 * std::max(1.0, m.norm()));
    CHECK((eig.vectors.adjoint() * eig.vectors - Matrix::Identity(n, n)).norm() < 1e-9);
  }
}

TEST_CASE("hs_inner closed forms") {
  CHECK(hs_inner(Matrix::Identity(3, 3), Matrix::Identity(3, 3)).real() ==
        doctest::Approx(3.0));
  CHECK(std::abs(hs_inner(sigma_x(), sigma_y())) < 1e-14);
  Matrix a(2, 2);
  a << 1, 2, 2, -1;
  CHECK(hs_inner(a, a).real() == doctest::Approx(10.0));
  CHECK_THROWS_AS(hs_inner(Matrix::Identity(2, 2), Matrix::Identity(3, 3)), DimMismatch);
}

TEST_CASE("commutator_tangent closed forms") {
  DensityMatrix d = diag_state({0.25, 0.75});
  CHECK(max_abs_diff(commutator_tangent(d, sigma_z()), Matrix::Zero(2, 2)) < 1e-14);

  Matrix expected(2, 2);
  expected << Complex(0, 0), Complex(0, -0.5), Complex(0, 0.5), Complex(0, 0);
  CHECK(max_abs_diff(commutator_tangent(d, sigma_x()), expected) < 1e-14);
}

TEST_CASE("commutator_tangent maps the symmetric basis to the antisymmetric one") {
  // i[D, S1(ij)] = (lambda_i - lambda_j) S2(ij) with S1 = E_ij + E_ji and
  // S2 = i E_ij - i E_ji.
  DensityMatrix d = diag_state({0.2, 0.3, 0.5});
  for (Index i = 0; i < 3; ++i)
    for (Index j = i + 1; j < 3; ++j) {
      Matrix s1 = Matrix::Zero(3, 3);
      s1(i, j) = 1.0;
      s1(j, i) = 1.0;
      Matrix s2 = Matrix::Zero(3, 3);
      s2(i, j) = Complex(0, 1);
      s2(j, i) = Complex(0, -1);
      double gap = d.eig().eigenvalues[i] - d.eig().eigenvalues[j];
      CHECK(max_abs_diff(commutator_tangent(d, s1), gap * s2) < 1e-14);
    }
}

TEST_CASE("commutator_tangent output is Hermitian and traceless") {
  Rng rng(5);
  for (int k = 0; k < 50; ++k) {
    Index n = 2 + k % 4;
    DensityMatrix d = random_density(rng, n);
    Matrix x = random_hermitian(rng, n);
    Matrix c = commutator_tangent(d, x);
    CHECK(hermiticity_defect(c) < 1e-12);
    CHECK(std::abs(c.trace()) < 1e-12);
  }
}

TEST_CASE("tangent_decompose worked example") {
  DensityMatrix d = diag_state({0.25, 0.75});
  Matrix b(2, 2);
  b << 0.1, 0.2, 0.2, -0.1;
  auto [comm, rest] = tangent_decompose(d, b);
  Matrix expected_comm(2, 2);
  expected_comm << 0.1, 0, 0, -0.1;
  CHECK(max_abs_diff(comm, expected_comm) < 1e-12);
  CHECK(max_abs_diff(comm + rest, b) < 1e-12);
  CHECK(std::abs(hs_inner(comm, rest)) < 1e-10);
}

TEST_CASE("tangent_decompose limit cases") {
  DensityMatrix d = diag_state({0.25, 0.75});
  Matrix diag_b(2, 2);
  diag_b << 0.3, 0, 0, -0.3;
  auto [c1, r1] = tangent_decompose(d, diag_b);
  CHECK(max_abs_diff(c1, diag_b) < 1e-12);
  CHECK(max_abs_diff(r1, Matrix::Zero(2, 2)) < 1e-12);

  Matrix b = commutator_tangent(d, sigma_x());
  auto [c2, r2] = tangent_decompose(d, b);
  CHECK(max_abs_diff(c2, Matrix::Zero(2, 2)) < 1e-12);
  CHECK(max_abs_diff(r2, b) < 1e-12);
}

TEST_CASE("tangent_decompose respects degenerate blocks") {
  DensityMatrix d = diag_state({0.3, 0.3, 0.4});
  Rng rng(9);
  Matrix b = random_hermitian(rng, 3);
  auto [comm, rest] = tangent_decompose(d, b);
  // The commuting part keeps the whole upper 2x2 block (equal eigenvalues).
  CHECK(max_abs_diff(Matrix(comm.topLeftCorner(2, 2)), Matrix(b.topLeftCorner(2, 2))) <
        1e-12);
  CHECK(std::abs(rest(0, 1)) < 1e-12);
  CHECK(max_abs_diff(comm + rest, b) < 1e-12);
  CHECK((comm * d.matrix() - d.matrix() * comm).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(hs_inner(comm, rest)) < 1e-10);
}

TEST_CASE("tangent_decompose parts are orthogonal on random inputs") {
  Rng rng(21);
  for (int k = 0; k < 50; ++k) {
    Index n = 2 + k % 5;
    DensityMatrix d = random_density(rng, n, 0.02);
    Matrix b = random_hermitian(rng, n);
    auto [comm, rest] = tangent_decompose(d, b);
    CHECK(std::abs(hs_inner(comm, rest)) < 1e-10);
    CHECK(max_abs_diff(comm + rest, b) < 1e-10);
  }
}

TEST_CASE("cluster_eigenvalues groups close values") {
  RealVector v(5);
  v << 0.0, 1e-14, 0.3, 0.3 + 1e-13, 0.7;
  auto clusters = cluster_eigenvalues(v, 1e-10);
  REQUIRE(clusters.size() == 3);
  CHECK(clusters[0] == std::pair<Index, Index>{0, 2});
  CHECK(clusters[1] == std::pair<Index, Index>{2, 4});
  CHECK(clusters[2] == std::pair<Index, Index>{4, 5});
}

TEST_CASE("with_decomposition accepts gauge-equivalent decompositions only") {
  DensityMatrix d = diag_state({0.25, 0.75});
  EigDecomposition eig = d.eig();
  eig.vectors.col(0) *= Complex(0, 1);  // a pure phase change
  DensityMatrix d2 = d.with_decomposition(eig);
  CHECK(max_abs_diff(d2.matrix(), d.matrix()) < 1e-14);

  EigDecomposition bad = d.eig();
  bad.eigenvalues[0] = 0.5;  // no longer reconstructs
  CHECK_THROWS_AS(d.with_decomposition(bad), BadParams);
}

TEST_CASE("random_density yields valid states with the requested floor") {
  Rng rng(3);
  for (int k = 0; k < 30; ++k) {
    Index n = 2 + k % 5;
    DensityMatrix d = random_density(rng, n, 0.05);
    CHECK(std::abs(d.matrix().trace().real() - 1.0) < 1e-12);
    CHECK(d.eig().eigenvalues.minCoeff() >= 0.05 - 1e-12);
  }
}

TEST_CASE("random_unitary is unitary and seed-deterministic") {
  Rng rng1(17), rng2(17);
  Matrix u1 = random_unitary(rng1, 4);
  Matrix u2 = random_unitary(rng2, 4);
  CHECK(max_abs_diff(u1, u2) == 0.0);
  CHECK((u1.adjoint() * u1 - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
}
