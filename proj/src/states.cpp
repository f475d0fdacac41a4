#include "evec/states.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

#include "evec/partitions.hpp"

namespace evec {

namespace {

constexpr double kParamTol = 1e-12;

void require_probability(double v, const char* name) {
  if (v < 0.0 || v > 1.0)
    throw InvariantViolation(std::string("params: ") + name + " = " + std::to_string(v) +
                             " outside [0, 1]");
}

Matrix projector(const Vector& v) { return v * v.adjoint(); }

}  // namespace

void Rho1Params::validate() const {
  require_probability(pA, "pA");
  require_probability(pB, "pB");
  require_probability(pC, "pC");
  require_probability(pABC, "pABC");
  const double sum = pA + pB + pC + pABC;
  if (std::abs(sum - 1.0) > kParamTol)
    throw InvariantViolation("rho1 params: weights sum to " + std::to_string(sum) + ", expected 1");
}

void Rho2Params::validate() const {
  if (n < 2 || n > HilbertDims::kMaxParties)
    throw InvariantViolation("rho2 params: N = " + std::to_string(n) + " outside [2, 12]");
  if (std::abs(alpha * alpha + beta * beta - 1.0) > kParamTol)
    throw InvariantViolation("rho2 params: alpha^2 + beta^2 != 1");
  require_probability(p, "p");
  require_probability(q, "q");
  if (q > p + kParamTol) throw InvariantViolation("rho2 params: requires q <= p");
}

void Rho3Params::validate() const {
  if (p < 0.0 || q < 0.0 || p + q > 1.0 + kParamTol)
    throw InvariantViolation("rho3 params: need p, q >= 0 and p + q <= 1");
}

PureState ghz(int n_parties, int local_dim, const std::vector<double>& coeffs) {
  if (n_parties < 1) throw InvariantViolation("ghz: need at least one party");
  if (local_dim < 2) throw InvariantViolation("ghz: local dimension must be >= 2");
  std::vector<double> c = coeffs;
  if (c.empty()) c.assign(local_dim, 1.0 / std::sqrt(static_cast<double>(local_dim)));
  if (static_cast<int>(c.size()) > local_dim)
    throw InvariantViolation("ghz: more coefficients than the local dimension");
  double nrm2 = 0.0;
  for (double x : c) nrm2 += x * x;
  if (std::abs(nrm2 - 1.0) > 1e-12)
    throw InvariantViolation("ghz: coefficients are not normalized (squared sum " +
                             std::to_string(nrm2) + ")");

  HilbertDims dims(std::vector<int>(n_parties, local_dim));
  Vector amps = Vector::Zero(dims.total());
  for (int i = 0; i < static_cast<int>(c.size()); ++i)
    amps(dims.flat(MultiIndex(n_parties, i))) = c[i];
  return PureState(std::move(dims), std::move(amps));
}

DensityMatrix rho1(const Rho1Params& params) {
  params.validate();
  HilbertDims dims({2, 2, 2});
  const Matrix bell = projector(ghz(2, 2).amplitudes());
  const Matrix ghz3 = projector(ghz(3, 2).amplitudes());
  Matrix m = Matrix::Zero(8, 8);
  m += params.pA * 0.5 * embed_operator(dims, PartySubset{2, 3}, bell);
  m += params.pB * 0.5 * embed_operator(dims, PartySubset{1, 3}, bell);
  m += params.pC * 0.5 * embed_operator(dims, PartySubset{1, 2}, bell);
  m += params.pABC * ghz3;
  return DensityMatrix(std::move(dims), std::move(m));
}

DensityMatrix rho2(const Rho2Params& params) {
  params.validate();
  HilbertDims dims(std::vector<int>(params.n, 2));
  const Eigen::Index total = dims.total();
  Matrix m = Matrix::Zero(total, total);
  const double noise = (params.p - params.q) / static_cast<double>(total);
  for (Eigen::Index i = 0; i < total; ++i) m(i, i) = noise;
  // GHZ and its dephased version share the populations; only the GHZ term
  // carries the (0^N, 1^N) coherence.
  const double pop_weight = 1.0 - params.p + params.q;
  m(0, 0) += pop_weight * params.alpha * params.alpha;
  m(total - 1, total - 1) += pop_weight * params.beta * params.beta;
  const double coh = (1.0 - params.p) * params.alpha * params.beta;
  m(0, total - 1) += coh;
  m(total - 1, 0) += coh;
  return DensityMatrix(std::move(dims), std::move(m));
}

DensityMatrix rho3(const Rho3Params& params) {
  params.validate();
  HilbertDims dims({5, 5, 5});
  const Matrix ghz35 = projector(ghz(3, 5).amplitudes());
  const Matrix ghz25 = projector(ghz(2, 5).amplitudes());
  Matrix m = (1.0 - params.p - params.q) * ghz35;
  m += params.p * 0.2 * embed_operator(dims, PartySubset{2, 3}, ghz25);
  m += params.q / 125.0 * Matrix::Identity(125, 125);
  return DensityMatrix(std::move(dims), std::move(m));
}

DensityMatrix sigma_filtered(const Rho1Params& params) {
  params.validate();
  HilbertDims dims({2, 2, 2});
  Vector chi(4);
  chi << std::sqrt(2.0), 0.0, 0.0, std::sqrt(2.0) / 4.0;
  Vector omega(8);
  omega.setZero();
  omega(0) = 2.0;
  omega(7) = 0.25;
  Matrix m_op(2, 2);
  m_op << 1.0, 0.0, 0.0, 0.25;

  const Matrix chi_proj = projector(chi);
  Matrix m = Matrix::Zero(8, 8);
  m += params.pA * embed_operator(dims, PartySubset{1}, m_op) *
       embed_operator(dims, PartySubset{2, 3}, chi_proj);
  m += params.pB * embed_operator(dims, PartySubset{2}, m_op) *
       embed_operator(dims, PartySubset{1, 3}, chi_proj);
  m += params.pC * embed_operator(dims, PartySubset{3}, m_op) *
       embed_operator(dims, PartySubset{1, 2}, chi_proj);
  m += params.pABC * projector(omega);
  return DensityMatrix(std::move(dims), std::move(m), TraceTag::unnormalized);
}

namespace {

DensityMatrix cj_from_weights(double w_both, double w_a, double w_b, double w_noise) {
  const Matrix phi = projector(ghz(2, 2).amplitudes());
  const Matrix id4 = Matrix::Identity(4, 4) / 4.0;
  Matrix m = w_both * Eigen::kroneckerProduct(phi, phi).eval();
  m += w_a * Eigen::kroneckerProduct(phi, id4).eval();
  m += w_b * Eigen::kroneckerProduct(id4, phi).eval();
  m += w_noise / 16.0 * Matrix::Identity(16, 16);
  return DensityMatrix(HilbertDims({2, 2, 2, 2}), std::move(m));
}

}  // namespace

DensityMatrix cj_local(double q1, double q2) {
  require_probability(q1, "q1");
  require_probability(q2, "q2");
  return cj_from_weights(q1 * q2, q1 * (1.0 - q2), (1.0 - q1) * q2, (1.0 - q1) * (1.0 - q2));
}

DensityMatrix cj_global(double q) {
  require_probability(q, "q");
  return cj_from_weights(q, 0.0, 0.0, 1.0 - q);
}

double analytic_w2_rho1(const Rho1Params& params) {
  params.validate();
  return (params.pC - 2.0 * std::sqrt(params.pA * params.pB) + params.pABC -
          0.5 * (params.pA + params.pB)) /
         std::sqrt(3.0);
}

double analytic_wgamma_rho2(const Rho2Params& params, int k) {
  params.validate();
  const double g = static_cast<double>(gamma(params.n, k));
  const double noise = (params.p - params.q) / std::pow(2.0, params.n);
  return 2.0 * ((1.0 - params.p) * params.alpha * params.beta - g * noise);
}

double analytic_w2_cj_global(double q) {
  require_probability(q, "q");
  return (3.0 * q - 1.0) / 8.0;
}

double analytic_w2_cj_local(double q1, double q2) {
  require_probability(q1, "q1");
  require_probability(q2, "q2");
  return (3.0 * q1 * q2 - 1.0) / 8.0;
}

double analytic_w_filtered(const Rho1Params& params) {
  params.validate();
  return params.pABC + 1.25 * params.pC - 0.5 * (params.pA + params.pB) -
         2.5 * std::sqrt(params.pA * params.pB);
}

double sigma_trace(const Rho1Params& params) {
  return 85.0 / 32.0 * (params.pA + params.pB + params.pC) + 65.0 / 16.0 * params.pABC;
}

}  // namespace evec
