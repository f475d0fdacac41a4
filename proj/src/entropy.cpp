#include "evec/entropy.hpp"

#include <algorithm>
#include <cmath>

namespace evec {

std::string EntropyOrder::label() const {
  if (kind == Kind::linear) return "linear";
  return "renyi-" + std::to_string(alpha);
}

double renyi_entropy(const DensityMatrix& rho, double alpha, double rank_tol) {
  if (alpha < 0.0) throw InvariantViolation("renyi_entropy: alpha must be >= 0");
  if (!rho.unit_trace()) throw InvariantViolation("renyi_entropy: state must have unit trace");
  if (alpha == 2.0) {
    // Tr(rho^2) is the squared Frobenius norm; no spectrum needed.
    return -std::log2(rho.entries().squaredNorm());
  }
  const Eigen::VectorXd ev = hermitian_spectrum(rho);

  if (alpha == 0.0) {
    int rank = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
      if (ev(i) > rank_tol) ++rank;
    return std::log2(static_cast<double>(std::max(rank, 1)));
  }
  if (std::abs(alpha - 1.0) < 1e-9) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
      if (ev(i) > 0.0) s -= ev(i) * std::log2(ev(i));
    return std::max(s, 0.0);
  }
  double power_sum = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > 0.0) power_sum += std::pow(ev(i), alpha);
  return std::log2(power_sum) / (1.0 - alpha);
}

double linear_entropy(const DensityMatrix& rho) {
  if (!rho.unit_trace()) throw InvariantViolation("linear_entropy: state must have unit trace");
  const double purity = rho.entries().squaredNorm();  // Tr(rho^2) for hermitian rho
  return std::sqrt(std::max(2.0 * (1.0 - purity), 0.0));
}

EntropyVector entropy_vector_pure(const PureState& psi, const PartitionFamily& family,
                                  EntropyOrder order) {
  if (!psi.normalized()) throw InvariantViolation("entropy_vector_pure: state must be normalized");
  if (family.empty()) throw InvariantViolation("entropy_vector_pure: empty partition family");
  std::vector<double> values;
  values.reserve(family.subsets.size());
  for (const auto& r : family.subsets) {
    DensityMatrix marginal = partial_trace(psi, r);
    values.push_back(order.kind == EntropyOrder::Kind::linear
                         ? linear_entropy(marginal)
                         : renyi_entropy(marginal, order.alpha));
  }
  std::sort(values.begin(), values.end(), std::greater<double>());
  return {std::move(values), family, order};
}

double s2_bound_from_witness(double w) {
  if (w >= std::sqrt(2.0))
    throw NumericalError("s2_bound_from_witness: w = " + std::to_string(w) +
                         " >= sqrt(2); no valid witness reaches this value");
  if (w <= 0.0) return 0.0;
  return -std::log2(1.0 - 0.5 * w * w);
}

int dimension_from_witness(double w) {
  if (w >= std::sqrt(2.0))
    throw NumericalError("dimension_from_witness: w = " + std::to_string(w) +
                         " >= sqrt(2); no valid witness reaches this value");
  if (w <= 0.0) return 1;
  // sqrt(2 (1 - 1/d)) >= w  <=>  d >= 1 / (1 - w^2/2); the guard band keeps
  // the exact step boundaries from rounding up.
  const double x = 1.0 / (1.0 - 0.5 * w * w);
  const int d = static_cast<int>(std::ceil(x - 1e-12));
  return std::max(d, 1);
}

}  // namespace evec
