// random.hpp — seeded sampling helpers: Haar unitaries, Ginibre states, GUE matrices.
#pragma once

#include <cstdint>
#include <random>

#include "majorreach/linalg.hpp"

namespace majorreach {

using Rng = std::mt19937_64;

/// Matrix with i.i.d. standard complex Gaussian entries.
Matrix ginibre(int rows, int cols, Rng& rng);

/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
Matrix haar_unitary(int n, Rng& rng);
Matrix haar_unitary(int n, std::uint64_t seed);

/// Random density matrix of the given rank, GG†/tr(GG†).
Matrix random_density(int n, int rank, Rng& rng);

/// Random Hermitian matrix (GUE-like, normalized to unit operator norm).
Matrix random_hermitian(int n, Rng& rng);

/// Random permutation of {0,...,n-1}.
std::vector<int> random_permutation(int n, Rng& rng);

}  // namespace majorreach
