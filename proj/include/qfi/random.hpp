#pragma once

#include <cstdint>
#include <random>

#include "qfi/matrix.hpp"

namespace qfi {

// Seeded generator wrapper so every stochastic routine in the library is
// reproducible from a single uint64 seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::mt19937_64& engine() { return engine_; }
  double uniform(double lo, double hi);
  double normal();
  int uniform_int(int lo, int hi);  // inclusive range

 private:
  std::mt19937_64 engine_;
};

// iid standard complex Gaussian entries.
Matrix random_ginibre(Rng& rng, Index rows, Index cols);
// Haar-distributed unitary: QR of a Ginibre matrix with the phase fix R_kk > 0.
Matrix random_unitary(Rng& rng, Index n);
Matrix random_hermitian(Rng& rng, Index n);
Matrix random_traceless_hermitian(Rng& rng, Index n);
// Random state with eigenvalues floored at min_eig (requires n*min_eig < 1).
DensityMatrix random_density(Rng& rng, Index n, double min_eig = 0.0);

}  // namespace qfi
