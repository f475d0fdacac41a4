// Shared fixtures for the unit suites: seeded random draws and small
// comparison helpers.

#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "evec/oracle.hpp"
#include "evec/states.hpp"
#include "evec/tensor.hpp"

namespace evtest {

inline double max_abs_diff(const evec::Matrix& a, const evec::Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline double frobenius_dist(const evec::Matrix& a, const evec::Matrix& b) {
  return (a - b).norm();
}

// Uniform draw from a probability simplex via normalized exponentials.
inline std::vector<double> dirichlet(int n, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(n);
  double sum = 0.0;
  for (double& x : w) {
    x = expo(rng);
    sum += x;
  }
  for (double& x : w) x /= sum;
  return w;
}

inline evec::Rho1Params random_rho1_params(std::mt19937_64& rng) {
  const auto w = dirichlet(4, rng);
  return {w[0], w[1], w[2], w[3]};
}

inline evec::Rho2Params random_rho2_params(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  evec::Rho2Params params;
  params.n = n;
  params.p = uni(rng);
  params.q = uni(rng) * params.p;
  // Keep alpha away from the endpoints so the state carries a coherence.
  params.alpha = std::sqrt(0.05 + 0.9 * uni(rng));
  params.beta = std::sqrt(1.0 - params.alpha * params.alpha);
  return params;
}

}  // namespace evtest
