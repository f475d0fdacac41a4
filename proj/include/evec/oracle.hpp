// oracle.hpp — independent sampling references used to validate the witness
// engine: convex-roof upper bounds from randomized ensemble decompositions,
// and seeded random separable/biseparable state generators for soundness
// tests. Everything here stays independent of the witness implementation.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "evec/entropy.hpp"
#include "evec/tensor.hpp"

namespace evec {

struct DecompositionSample {
  std::vector<double> weights;    // sum to 1
  std::vector<PureState> states;  // rho = sum_i w_i |psi_i><psi_i|
};

// Haar-distributed unitary (QR of a complex Gaussian with phase correction).
Matrix haar_unitary(Eigen::Index n, std::mt19937_64& rng);

PureState random_pure_state(const HilbertDims& dims, std::mt19937_64& rng);

// G G^dag / tr with G a (total x rank) complex Gaussian; rank = 0 means full.
DensityMatrix random_density_matrix(const HilbertDims& dims, std::mt19937_64& rng, int rank = 0);

// One ensemble decomposition of rho, drawn by mixing its eigendecomposition
// through a Haar-random isometry onto rank + 2 elements. Every decomposition
// of rho arises from some isometry, so sampling these covers the
// decomposition space.
DecompositionSample sample_decomposition(const DensityMatrix& rho, std::mt19937_64& rng);

// Entrywise minimum, over the eigendecomposition and `trials` sampled
// decompositions, of the weighted average of the per-state ordered entropy
// vectors. An upper bound on the convex-roof ordered entropy vector;
// non-increasing in `trials` for a fixed seed.
EntropyVector roof_upper_bound(const DensityMatrix& rho, const PartitionFamily& family,
                               int trials, EntropyOrder order = EntropyOrder::linear(),
                               std::uint64_t seed = 0);

// Mixture of `terms` pure states, each a tensor product over a uniformly
// random partition of the parties into exactly k blocks, with
// Dirichlet-uniform weights. Deterministic for a fixed seed.
DensityMatrix random_k_separable(const HilbertDims& dims, int k, int terms, std::uint64_t seed);

}  // namespace evec
