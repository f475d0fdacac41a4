// states.hpp — constructors for the benchmark state families and their
// analytic witness values, used to cross-validate the witness engine.

#pragma once

#include <vector>

#include "evec/tensor.hpp"

namespace evec {

// Tripartite qubit mixture: each bipartite term pairs a maximally mixed
// party with a Bell state on the other two, plus a GHZ term.
//   rho1 = pA (1_A/2 x Bell_BC) + pB (1_B/2 x Bell_AC)
//        + pC (1_C/2 x Bell_AB) + pABC GHZ_ABC
struct Rho1Params {
  double pA = 0.0, pB = 0.0, pC = 0.0, pABC = 0.0;
  void validate() const;  // all >= 0, sum = 1 within 1e-12
};

// N-qubit GHZ with amplitudes (alpha, beta), its fully dephased version
// (same populations, no coherence) and white noise:
//   rho2 = (1-p) ghz + q dephased + (p-q) 1/2^N,  0 <= q <= p <= 1.
struct Rho2Params {
  int n = 0;
  double alpha = 0.0, beta = 0.0;
  double p = 0.0, q = 0.0;
  void validate() const;
};

// Three parties of local dimension 5:
//   rho3 = (1-p-q) GHZ(3,5) + p (1_A/5 x GHZ(2,5)_BC) + q 1/125.
struct Rho3Params {
  double p = 0.0, q = 0.0;
  void validate() const;  // p, q >= 0, p + q <= 1
};

// sum_i coeffs_i |i...i> on n parties of dimension d. Coefficients must be
// normalized; an empty list means the balanced state (1/sqrt(d), ...).
PureState ghz(int n_parties, int local_dim, const std::vector<double>& coeffs = {});

DensityMatrix rho1(const Rho1Params& params);
DensityMatrix rho2(const Rho2Params& params);
DensityMatrix rho3(const Rho3Params& params);

// Locally filtered image of rho1, kept unnormalized (normalize() at the API
// boundary when a unit-trace state is needed):
//   sigma = pA M_A chi_BC + pB M_B chi_AC + pC M_C chi_AB + pABC omega,
// with chi the projector on sqrt(2)|00> + (sqrt(2)/4)|11>, omega the projector
// on 2|000> + (1/4)|111>, and M = diag(1, 1/4).
DensityMatrix sigma_filtered(const Rho1Params& params);

// Channel states of the two-qubit depolarizing channels on party order
// (A, A', B, B'), with the maximally entangled pairs on (A,A') and (B,B').
DensityMatrix cj_local(double q1, double q2);
DensityMatrix cj_global(double q);

// ---- analytic witness values ---------------------------------------------

// W_2(rho1, C1, {A, B}) with C1 = {(000,111),(000,110),(001,111)}:
//   (1/sqrt(3)) (pC - 2 sqrt(pA pB) + pABC - (pA + pB)/2).
double analytic_w2_rho1(const Rho1Params& params);

// W_gamma(k)(rho2, {(0^N,1^N)}, all bipartitions):
//   2 ((1-p) alpha beta - gamma(k) (p-q) / 2^N).
double analytic_wgamma_rho2(const Rho2Params& params, int k);

// Single-orientation normalization (3q-1)/8 resp. (3 q1 q2 - 1)/8 for
// W_2(cj, {(0000,1111)}, {A, B}). The witness engine counts both pair
// orientations and therefore returns exactly twice these values; signs and
// the q = 1/3 threshold agree.
double analytic_w2_cj_global(double q);
double analytic_w2_cj_local(double q1, double q2);

// The sign condition for the unnormalized sigma under the same C1, {A, B}
// question: pABC + (5/4) pC - (pA + pB)/2 - (5/2) sqrt(pA pB). The engine
// value on normalize(sigma) equals this divided by (sqrt(3) * tr(sigma)).
double analytic_w_filtered(const Rho1Params& params);

// tr of the unnormalized sigma: (85/32)(pA + pB + pC) + (65/16) pABC.
double sigma_trace(const Rho1Params& params);

}  // namespace evec
