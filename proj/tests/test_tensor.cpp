#include <doctest.h>

#include <cmath>

#include "evec/oracle.hpp"
#include "evec/states.hpp"
#include "evec/tensor.hpp"
#include "test_helpers.hpp"

using namespace evec;
using evtest::max_abs_diff;

namespace {

DensityMatrix maximally_mixed(std::vector<int> dims_list) {
  HilbertDims dims(std::move(dims_list));
  Matrix m = Matrix::Identity(dims.total(), dims.total()) / static_cast<double>(dims.total());
  return DensityMatrix(std::move(dims), std::move(m));
}

}  // namespace

TEST_CASE("HilbertDims validates and indexes row-major, party 1 most significant") {
  HilbertDims dims({2, 3, 2});
  CHECK(dims.total() == 12);
  CHECK(dims.flat({1, 2, 0}) == 10);
  CHECK(dims.unflat(10) == MultiIndex{1, 2, 0});
  CHECK(dims.flat({0, 0, 1}) == 1);
  CHECK_THROWS_AS(HilbertDims({}), InvariantViolation);
  CHECK_THROWS_AS(HilbertDims({2, 1}), InvariantViolation);
  CHECK_THROWS_AS(HilbertDims(std::vector<int>(13, 2)), InvariantViolation);
  CHECK_THROWS_AS(dims.flat({0, 3, 0}), InvariantViolation);
  CHECK_THROWS_AS(dims.flat({0, 0}), InvariantViolation);
}

TEST_CASE("DensityMatrix enforces hermiticity, trace and positivity") {
  HilbertDims dims({2});
  Matrix ok(2, 2);
  ok << 0.5, 0.0, 0.0, 0.5;
  CHECK_NOTHROW(DensityMatrix(dims, ok));

  Matrix non_hermitian(2, 2);
  non_hermitian << 0.5, 0.1, 0.3, 0.5;
  CHECK_THROWS_AS(DensityMatrix(dims, non_hermitian), InvariantViolation);

  Matrix bad_trace(2, 2);
  bad_trace << 0.9, 0.0, 0.0, 0.5;
  CHECK_THROWS_AS(DensityMatrix(dims, bad_trace), InvariantViolation);
  CHECK_NOTHROW(DensityMatrix(dims, bad_trace, TraceTag::unnormalized));

  Matrix negative(2, 2);
  negative << 1.5, 0.0, 0.0, -0.5;
  CHECK_THROWS_AS(DensityMatrix(dims, negative), InvariantViolation);
}

TEST_CASE("tensor_product of density matrices") {
  const DensityMatrix id2 = maximally_mixed({2});
  const DensityMatrix prod = tensor_product(std::vector<DensityMatrix>{id2, id2});
  CHECK(prod.dims().dims() == std::vector<int>{2, 2});
  CHECK(max_abs_diff(prod.entries(), Matrix::Identity(4, 4) / 4.0) < 1e-15);
  CHECK_THROWS_AS(tensor_product(std::vector<DensityMatrix>{}), InvariantViolation);
}

TEST_CASE("tensor_product of pure states tracks basis bookkeeping") {
  Vector v0(2), v1(2);
  v0 << 1.0, 0.0;
  v1 << 0.0, 1.0;
  PureState zero(HilbertDims({2}), v0), one(HilbertDims({2}), v1);
  const PureState prod = tensor_product(std::vector<PureState>{zero, one});
  CHECK(prod.amplitudes()(1) == cplx(1.0, 0.0));
  CHECK(prod.amplitudes().cwiseAbs().sum() == doctest::Approx(1.0));

  // |phi+> x |phi+>: the all-zeros/all-ones coherence is 1/4.
  const PureState bell = ghz(2, 2);
  const PureState two_bells = tensor_product(std::vector<PureState>{bell, bell});
  const DensityMatrix rho = two_bells.density();
  CHECK(std::abs(rho.entry({0, 0, 0, 0}, {1, 1, 1, 1}) - cplx(0.25, 0.0)) < 1e-15);
}

TEST_CASE("partial_trace examples") {
  const DensityMatrix bell = ghz(2, 2).density();
  const DensityMatrix marginal = partial_trace(bell, PartySubset{1});
  CHECK(max_abs_diff(marginal.entries(), Matrix::Identity(2, 2) / 2.0) < 1e-15);

  // Product state: tracing all but one party returns that factor.
  std::mt19937_64 rng(7);
  const DensityMatrix a = random_density_matrix(HilbertDims({2}), rng);
  const DensityMatrix b = random_density_matrix(HilbertDims({3}), rng);
  const DensityMatrix ab = tensor_product(std::vector<DensityMatrix>{a, b});
  CHECK(max_abs_diff(partial_trace(ab, PartySubset{2}).entries(), b.entries()) < 1e-14);

  const DensityMatrix ghz3 = ghz(3, 2).density();
  const DensityMatrix bc = partial_trace(ghz3, PartySubset{2, 3});
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = 0.5;
  expected(3, 3) = 0.5;
  CHECK(max_abs_diff(bc.entries(), expected) < 1e-15);

  CHECK_THROWS_AS(partial_trace(bell, PartySubset{}), InvariantViolation);
  CHECK_THROWS_AS(partial_trace(bell, PartySubset{3}), InvariantViolation);
}

TEST_CASE("partial_trace of a pure state matches the projector route") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const PureState psi = random_pure_state(HilbertDims({2, 3, 2}), rng);
    for (const PartySubset& keep : {PartySubset{1}, PartySubset{2, 3}, PartySubset{1, 3}}) {
      const DensityMatrix via_amp = partial_trace(psi, keep);
      const DensityMatrix via_rho = partial_trace(psi.density(), keep);
      CHECK(max_abs_diff(via_amp.entries(), via_rho.entries()) < 1e-13);
    }
  }
}

TEST_CASE("partial_trace composes: tracing out A then B equals tracing out both") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const DensityMatrix rho = random_density_matrix(HilbertDims({2, 2, 2}), rng);
    const DensityMatrix step1 = partial_trace(rho, PartySubset{2, 3});
    const DensityMatrix step2 = partial_trace(step1, PartySubset{2});  // old party 3
    const DensityMatrix direct = partial_trace(rho, PartySubset{3});
    CHECK(max_abs_diff(step2.entries(), direct.entries()) < 1e-12);
    CHECK(std::abs(step2.trace_real() - 1.0) < 1e-12);
  }
}

TEST_CASE("hermitian_spectrum basics and unitary invariance") {
  CHECK(hermitian_spectrum(maximally_mixed({2}))(0) == doctest::Approx(0.5));
  CHECK(hermitian_spectrum(maximally_mixed({2}))(1) == doctest::Approx(0.5));

  Matrix pure0 = Matrix::Zero(2, 2);
  pure0(0, 0) = 1.0;
  const Eigen::VectorXd sp = hermitian_spectrum(DensityMatrix(HilbertDims({2}), pure0));
  CHECK(sp(0) == doctest::Approx(1.0));
  CHECK(sp(1) == doctest::Approx(0.0));

  Matrix diag3 = Matrix::Zero(3, 3);
  diag3(0, 0) = 0.1;
  diag3(1, 1) = 0.8;
  diag3(2, 2) = 0.1;
  const Eigen::VectorXd sp3 = hermitian_spectrum(DensityMatrix(HilbertDims({3}), diag3));
  CHECK(sp3(0) == doctest::Approx(0.8));
  CHECK(sp3(1) == doctest::Approx(0.1));
  CHECK(sp3(2) == doctest::Approx(0.1));

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const DensityMatrix rho = random_density_matrix(HilbertDims({2, 2}), rng);
    const Matrix u = haar_unitary(4, rng);
    const DensityMatrix rotated(rho.dims(), u * rho.entries() * u.adjoint());
    CHECK((hermitian_spectrum(rho) - hermitian_spectrum(rotated)).cwiseAbs().maxCoeff() < 1e-10);
    // Eigenvalues sum to the trace.
    CHECK(hermitian_spectrum(rho).sum() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("inv_sqrt_psd examples and identity property") {
  CHECK(max_abs_diff(inv_sqrt_psd(Matrix::Identity(3, 3)), Matrix::Identity(3, 3)) < 1e-12);

  Matrix d(2, 2);
  d << 4.0, 0.0, 0.0, 1.0;
  Matrix expected(2, 2);
  expected << 0.5, 0.0, 0.0, 1.0;
  CHECK(max_abs_diff(inv_sqrt_psd(d), expected) < 1e-12);

  Matrix singular(2, 2);
  singular << 1.0, 0.0, 0.0, 0.0;
  CHECK_THROWS_AS(inv_sqrt_psd(singular), SingularMarginal);

  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 25; ++trial) {
    const DensityMatrix rho = random_density_matrix(HilbertDims({2, 2}), rng);
    const Matrix x = inv_sqrt_psd(rho);
    CHECK(max_abs_diff(x * rho.entries() * x, Matrix::Identity(4, 4)) < 1e-8);
  }
}

TEST_CASE("normalize rescales and rejects vanishing trace") {
  HilbertDims dims({2});
  const DensityMatrix doubled(dims, Matrix::Identity(2, 2), TraceTag::unnormalized);
  CHECK(max_abs_diff(normalize(doubled).entries(), Matrix::Identity(2, 2) / 2.0) < 1e-15);
  const DensityMatrix sigma = sigma_filtered({0.25, 0.25, 0.25, 0.25});
  CHECK(normalize(sigma).trace_real() == doctest::Approx(1.0));
  CHECK_THROWS_AS(DensityMatrix(dims, Matrix::Zero(2, 2), TraceTag::unnormalized),
                  InvariantViolation);
}

TEST_CASE("embed_operator places factors on the right parties") {
  HilbertDims dims({2, 2, 2});
  Matrix x(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  const Matrix on_b = embed_operator(dims, PartySubset{2}, x);
  // <010| X_B |000> = 1.
  CHECK(on_b(dims.flat({0, 1, 0}), dims.flat({0, 0, 0})) == cplx(1.0, 0.0));
  CHECK(on_b(dims.flat({1, 1, 0}), dims.flat({1, 0, 0})) == cplx(1.0, 0.0));
  CHECK(on_b.cwiseAbs().sum() == doctest::Approx(8.0));
}
