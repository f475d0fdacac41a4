// witness.hpp — the entropy-vector witness W_j(rho, C, R) and the
// classification procedures built on it: non-decomposability over a
// bipartition family, k-separability, entanglement depth, and entanglement
// dimensionality.
//
// For a set C of unordered multiindex pairs and a family R of party subsets,
//
//   W_j = (2 / sqrt(|C|)) * sum over pairs (eta, eta') in C of
//         [ |<eta|rho|eta'>|
//           - min over j-element subsets {r_m} of R of
//             sum_m sqrt(<eta_rm|rho|eta_rm> <eta'_rm|rho|eta'_rm>) ]
//
// where (eta_r, eta'_r) is the pair with the digits on r exchanged. The
// geometric-mean term of a subset equals that of its complement, so the
// per-pair minimum is the sum of the j smallest of the |R| candidate terms.
//
// Counting convention: the pair sum runs over both orientations of each
// unordered pair (hence the leading 2), while |C| in the prefactor counts
// unordered pairs. A positive W_j lower-bounds the j-th largest entry of the
// ordered linear-entropy vector of the reductions over R, which in turn
// gives Renyi-2 and local-rank bounds (see entropy.hpp).
//
// Verdicts use strict positivity with threshold 1e-12: a zero witness
// certifies nothing.

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "evec/entropy.hpp"
#include "evec/tensor.hpp"

namespace evec {

inline constexpr double kWitnessPositivityThreshold = 1e-12;
inline constexpr double kCoherenceCutoff = 1e-10;

struct PairSet {
  // Unordered pairs of distinct multiindices, each stored (smaller, larger)
  // by flat index; the list is duplicate-free.
  std::vector<std::pair<MultiIndex, MultiIndex>> pairs;

  int size() const { return static_cast<int>(pairs.size()); }
  bool empty() const { return pairs.empty(); }
};

// Canonicalizes, validates against dims, rejects eta == eta' and duplicates.
PairSet make_pair_set(const HilbertDims& dims,
                      std::vector<std::pair<MultiIndex, MultiIndex>> pairs);

struct PairEvidence {
  MultiIndex eta, eta_prime;
  double coherence = 0.0;  // |<eta|rho|eta'>|
  double min_term = 0.0;   // sum of the j smallest geometric-mean terms
  // The minimizing subsets and their geometric-mean terms, ascending.
  std::vector<std::pair<PartySubset, double>> min_subsets;
};

struct WitnessResult {
  double value = 0.0;
  int j = 0;
  PartitionFamily family;
  PairSet c_used;
  std::vector<PairEvidence> pair_details;
  double s2_bound_bits = 0.0;  // -log2(1 - value^2/2), 0 if value <= 0
  int dimension_bound = 1;     // certified local rank
};

// Evaluate W_j for an explicit pair set. Throws on j out of [1, |R|] or on
// pair indices outside dims.
WitnessResult witness(const DensityMatrix& rho, const PairSet& c,
                      const PartitionFamily& family, int j);

// Choose the pair set maximizing W_j: enumerate off-diagonal entries with
// magnitude above kCoherenceCutoff whose pair is not invariant under the
// digit swap of any subset in the family, rank them by their per-pair
// contribution, and take the best prefix (at most max_pairs entries;
// max_pairs = 0 means 2 * max local dimension). Deterministic: ties are
// broken by lexicographic pair order. Throws EmptyPairSet if no admissible
// entry exists.
PairSet select_pairs(const DensityMatrix& rho, const PartitionFamily& family, int j,
                     int max_pairs = 0);

// ---- classification procedures -----------------------------------------

struct DecomposabilityVerdict {
  PartitionFamily family;
  bool not_decomposable = false;
  std::optional<WitnessResult> evidence;  // absent when no pair set exists
};

// Positivity of W_|R| excludes every convex mixture of states separable
// across one of the bipartitions in the family.
DecomposabilityVerdict not_decomposable(const DensityMatrix& rho, const PartitionFamily& family,
                                        const std::optional<PairSet>& c = std::nullopt);

struct SeparabilityLevel {
  int k = 0;
  std::int64_t j = 0;  // gamma(k)
  std::optional<WitnessResult> result;
  bool positive = false;
};

struct SeparabilityScan {
  std::vector<SeparabilityLevel> levels;  // k = N-1 down to 1
  // Smallest k with a positive witness: rho is certified not
  // (k+1)-separable. 0 means no certificate. certified_k == 1 means genuine
  // multipartite entanglement.
  int certified_k = 0;
  bool gme = false;
};

SeparabilityScan k_separability_scan(const DensityMatrix& rho,
                                     const std::optional<PairSet>& c = std::nullopt);

struct DepthLevel {
  int m = 0;
  int family_size = 0;  // |G_m|, also the j used
  std::optional<WitnessResult> result;
  bool positive = false;
};

struct DepthScan {
  std::vector<DepthLevel> levels;  // m = 0 .. floor(N/2) - 1
  // ceil(N/2) + m for the largest m with all levels 0..m positive; 0 when
  // the first level already fails. Equal to N when every level is positive.
  int certified_depth = 0;
  bool n_partite = false;
};

DepthScan entanglement_depth(const DensityMatrix& rho,
                             const std::optional<PairSet>& c = std::nullopt);

struct DimensionalityBound {
  std::vector<std::optional<WitnessResult>> per_j;  // j = 1 .. |R|
  std::vector<int> dimensions;                      // certified local ranks
  std::vector<double> s2_bounds;                    // bits
};

DimensionalityBound dimensionality_vector_bound(const DensityMatrix& rho,
                                                const PartitionFamily& family,
                                                const std::optional<PairSet>& c = std::nullopt);

// Number of distinct density-matrix entries the witness reads: |C|
// off-diagonal entries plus, summed over pairs, the count of distinct
// swapped diagonal entries of that pair across all subsets. All |R| terms
// are read regardless of j, since the j smallest are not known in advance.
std::int64_t coherence_budget(const HilbertDims& dims, const PairSet& c,
                              const PartitionFamily& family, int j);

}  // namespace evec
