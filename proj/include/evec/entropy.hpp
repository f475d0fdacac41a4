// entropy.hpp — Renyi-alpha and linear entropies, ordered entropy vectors of
// pure states, and the conversions from witness values to entropy and
// dimensionality bounds.
//
// Linear-entropy values and Renyi values (bits) live in distinct, explicitly
// flagged unit systems; combining vectors of different kinds is an error.

#pragma once

#include <string>
#include <vector>

#include "evec/tensor.hpp"

namespace evec {

struct EntropyOrder {
  enum class Kind { renyi, linear };
  Kind kind = Kind::linear;
  double alpha = 0.0;  // meaningful only for Kind::renyi

  static EntropyOrder renyi(double a) { return {Kind::renyi, a}; }
  static EntropyOrder linear() { return {Kind::linear, 0.0}; }

  bool operator==(const EntropyOrder& o) const {
    return kind == o.kind && (kind == Kind::linear || alpha == o.alpha);
  }
  std::string label() const;
};

struct EntropyVector {
  std::vector<double> values;  // sorted non-increasing
  PartitionFamily family;
  EntropyOrder order;
};

// S_alpha(rho) = log2(Tr rho^alpha) / (1 - alpha), in bits.
// alpha = 0 counts eigenvalues above rank_tol; alpha = 1 is the von Neumann
// limit -sum(lambda log2 lambda).
double renyi_entropy(const DensityMatrix& rho, double alpha, double rank_tol = 1e-8);

// S_L(rho) = sqrt(2 (1 - Tr rho^2)).
double linear_entropy(const DensityMatrix& rho);

// Entropies of the reductions rho_r for r in the family, sorted
// non-increasing.
EntropyVector entropy_vector_pure(const PureState& psi, const PartitionFamily& family,
                                  EntropyOrder order);

// Renyi-2 bound implied by a witness value: -log2(1 - w^2/2) bits.
// Returns 0 for w <= 0; w >= sqrt(2) is impossible for a valid witness and
// signals an upstream bug.
double s2_bound_from_witness(double w);

// Smallest integer d with sqrt(2 (1 - 1/d)) >= w, i.e. the local rank needed
// to reach linear entropy w. Returns 1 for w <= 0. Exact at the step
// boundaries sqrt(2 (1 - 1/d)) up to a 1e-12 guard band.
int dimension_from_witness(double w);

}  // namespace evec
