#include "evec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace evec {

namespace {

Matrix complex_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = cplx(gauss(rng), gauss(rng));
  return g;
}

std::mt19937_64 stream_for_trial(std::uint64_t seed, int trial) {
  // Independent deterministic stream per trial index.
  return std::mt19937_64(seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL * (trial + 1));
}

}  // namespace

Matrix haar_unitary(Eigen::Index n, std::mt19937_64& rng) {
  Matrix g = complex_gaussian(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    const cplx d = r(i, i);
    q.col(i) *= (std::abs(d) > 0.0) ? d / std::abs(d) : cplx(1.0, 0.0);
  }
  return q;
}

PureState random_pure_state(const HilbertDims& dims, std::mt19937_64& rng) {
  Vector v = complex_gaussian(dims.total(), 1, rng).col(0);
  v /= v.norm();
  return PureState(dims, std::move(v));
}

DensityMatrix random_density_matrix(const HilbertDims& dims, std::mt19937_64& rng, int rank) {
  const Eigen::Index r = rank > 0 ? rank : dims.total();
  Matrix g = complex_gaussian(dims.total(), r, rng);
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  m = 0.5 * (m + m.adjoint().eval());
  return DensityMatrix(dims, std::move(m));
}

DecompositionSample sample_decomposition(const DensityMatrix& rho, std::mt19937_64& rng) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.entries());
  if (es.info() != Eigen::Success) throw NumericalError("sample_decomposition: eigensolve failed");
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double cutoff = 1e-12 * std::max(ev.maxCoeff(), 1e-300);

  std::vector<Eigen::Index> support;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > cutoff) support.push_back(i);
  const Eigen::Index s = static_cast<Eigen::Index>(support.size());
  if (s == 0) throw NumericalError("sample_decomposition: zero state");

  const Eigen::Index a = s + 2;
  Matrix isometry = haar_unitary(a, rng).leftCols(s);

  DecompositionSample sample;
  for (Eigen::Index i = 0; i < a; ++i) {
    Vector phi = Vector::Zero(rho.dims().total());
    for (Eigen::Index k = 0; k < s; ++k)
      phi += isometry(i, k) * std::sqrt(ev(support[k])) * es.eigenvectors().col(support[k]);
    const double w = phi.squaredNorm();
    if (w < 1e-14) continue;
    phi /= std::sqrt(w);
    sample.weights.push_back(w);
    sample.states.emplace_back(rho.dims(), std::move(phi));
  }
  return sample;
}

EntropyVector roof_upper_bound(const DensityMatrix& rho, const PartitionFamily& family,
                               int trials, EntropyOrder order, std::uint64_t seed) {
  if (trials < 1) throw InvariantViolation("roof_upper_bound: trials must be >= 1");
  if (family.empty()) throw InvariantViolation("roof_upper_bound: empty partition family");

  auto averaged_vector = [&](const DecompositionSample& sample) {
    std::vector<double> avg(family.subsets.size(), 0.0);
    for (std::size_t i = 0; i < sample.states.size(); ++i) {
      const EntropyVector vec = entropy_vector_pure(sample.states[i], family, order);
      for (std::size_t j = 0; j < avg.size(); ++j) avg[j] += sample.weights[i] * vec.values[j];
    }
    return avg;
  };

  // The eigendecomposition itself is the identity-isometry sample.
  DecompositionSample eigen_sample;
  {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.entries());
    if (es.info() != Eigen::Success) throw NumericalError("roof_upper_bound: eigensolve failed");
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double cutoff = 1e-12 * std::max(ev.maxCoeff(), 1e-300);
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      if (ev(i) <= cutoff) continue;
      eigen_sample.weights.push_back(ev(i));
      eigen_sample.states.emplace_back(rho.dims(), es.eigenvectors().col(i).eval());
    }
  }

  std::vector<double> best = averaged_vector(eigen_sample);
  for (int t = 0; t < trials; ++t) {
    auto rng = stream_for_trial(seed, t);
    const std::vector<double> avg = averaged_vector(sample_decomposition(rho, rng));
    for (std::size_t j = 0; j < best.size(); ++j) best[j] = std::min(best[j], avg[j]);
  }
  return {std::move(best), family, order};
}

DensityMatrix random_k_separable(const HilbertDims& dims, int k, int terms, std::uint64_t seed) {
  const int n = dims.parties();
  if (k < 1 || k > n)
    throw InvariantViolation("random_k_separable: k = " + std::to_string(k) + " outside [1, " +
                             std::to_string(n) + "]");
  if (terms < 1) throw InvariantViolation("random_k_separable: terms must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> block_of(0, k - 1);
  std::exponential_distribution<double> expo(1.0);

  Matrix m = Matrix::Zero(dims.total(), dims.total());
  std::vector<double> weights(terms);
  double weight_sum = 0.0;
  for (double& w : weights) {
    w = expo(rng);
    weight_sum += w;
  }

  for (int t = 0; t < terms; ++t) {
    // Uniform over partitions into exactly k nonempty blocks: uniform
    // surjective labelings, sampled by rejection.
    std::vector<int> labels(n);
    while (true) {
      std::vector<bool> used(k, false);
      for (int i = 0; i < n; ++i) {
        labels[i] = block_of(rng);
        used[labels[i]] = true;
      }
      if (std::all_of(used.begin(), used.end(), [](bool u) { return u; })) break;
    }

    std::vector<std::vector<int>> blocks(k);
    for (int i = 0; i < n; ++i) blocks[labels[i]].push_back(i + 1);

    std::vector<PartySubset> block_subsets;
    std::vector<Vector> block_amps;
    for (const auto& parties : blocks) {
      PartySubset sub(parties);
      HilbertDims sub_dims = dims.restrict_to(sub);
      block_amps.push_back(random_pure_state(sub_dims, rng).amplitudes());
      block_subsets.push_back(std::move(sub));
    }

    Vector amps(dims.total());
    for (Eigen::Index f = 0; f < dims.total(); ++f) {
      const MultiIndex eta = dims.unflat(f);
      cplx amp(1.0, 0.0);
      for (std::size_t b = 0; b < block_subsets.size(); ++b) {
        const HilbertDims sub_dims = dims.restrict_to(block_subsets[b]);
        MultiIndex sub_eta;
        for (int p : block_subsets[b].members) sub_eta.push_back(eta[p - 1]);
        amp *= block_amps[b](sub_dims.flat(sub_eta));
      }
      amps(f) = amp;
    }
    m += (weights[t] / weight_sum) * (amps * amps.adjoint());
  }
  m = 0.5 * (m + m.adjoint().eval());
  return DensityMatrix(dims, std::move(m));
}

}  // namespace evec
