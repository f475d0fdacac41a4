// normalform.hpp — local invertible filtering and the iterative normal form
// in which every single-party reduction is proportional to the identity.
//
// One sweep applies, for each party i in turn, the filter (d_i rho_i)^(-1/2)
// on that party and renormalizes. Sweeps repeat until the largest deviation
// max_i ||rho_i - 1/d_i||_F drops below the tolerance or the sweep budget is
// exhausted; non-convergence is reported in the filter metadata, not thrown.
// A numerically singular marginal aborts with SingularMarginal: no invertible
// filter exists there, and projecting onto the range would silently change
// the separability question.

#pragma once

#include <vector>

#include "evec/tensor.hpp"

namespace evec {

struct FilterSet {
  std::vector<Matrix> ops;  // one operator per party, determinant-normalized
  int sweeps = 0;
  double flatness = 0.0;  // max_i ||rho_i - 1/d_i||_F at exit
  bool converged = false;
};

struct NormalFormResult {
  DensityMatrix state;
  FilterSet filters;
};

// (A_1 x ... x A_n) rho (.)^dag / trace. Filters must match the local
// dimensions; a vanishing trace after filtering is an error.
DensityMatrix apply_filters(const DensityMatrix& rho, const std::vector<Matrix>& filters);
DensityMatrix apply_filters(const DensityMatrix& rho, const FilterSet& filters);

NormalFormResult normal_form(const DensityMatrix& rho, double tol = 1e-10, int max_iter = 500,
                             double singular_tol = 1e-12);

// max over parties of ||rho_i - 1/d_i||_F.
double marginal_flatness(const DensityMatrix& rho);

}  // namespace evec
