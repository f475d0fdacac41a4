#include <doctest.h>

#include <cmath>

#include "evec/states.hpp"
#include "evec/witness.hpp"
#include "test_helpers.hpp"

using namespace evec;
using evtest::max_abs_diff;

TEST_CASE("ghz constructor") {
  const PureState standard = ghz(3, 2, {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)});
  CHECK(std::abs(standard.amplitude({0, 0, 0}) - cplx(1 / std::sqrt(2.0), 0)) < 1e-15);
  CHECK(std::abs(standard.amplitude({1, 1, 1}) - cplx(1 / std::sqrt(2.0), 0)) < 1e-15);

  const PureState phi5 = ghz(2, 5);  // balanced by default
  for (int i = 0; i < 5; ++i)
    CHECK(std::abs(phi5.amplitude({i, i}) - cplx(1.0 / std::sqrt(5.0), 0)) < 1e-15);

  const PureState psi01 = ghz(3, 3, {std::sqrt(0.8), std::sqrt(0.1), std::sqrt(0.1)});
  CHECK(std::abs(psi01.amplitude({0, 0, 0}) - cplx(std::sqrt(0.8), 0)) < 1e-15);
  CHECK(std::abs(psi01.amplitude({2, 2, 2}) - cplx(std::sqrt(0.1), 0)) < 1e-15);

  CHECK_THROWS_AS(ghz(2, 2, {1.0, 0.0, 0.0}), InvariantViolation);  // too many coefficients
  CHECK_THROWS_AS(ghz(2, 2, {0.9, 0.1}), InvariantViolation);       // not normalized
}

TEST_CASE("rho1 population and coherence structure") {
  CHECK(max_abs_diff(rho1({0.0, 0.0, 0.0, 1.0}).entries(), ghz(3, 2).density().entries()) <
        1e-15);

  const DensityMatrix a_noise = rho1({1.0, 0.0, 0.0, 0.0});
  CHECK(a_noise.population({0, 0, 0}) == doctest::Approx(0.25));
  CHECK(a_noise.population({1, 1, 1}) == doctest::Approx(0.25));
  CHECK(std::abs(a_noise.entry({0, 0, 0}, {0, 1, 1}) - cplx(0.25, 0.0)) < 1e-15);
  CHECK(std::abs(a_noise.entry({0, 0, 0}, {1, 1, 1})) < 1e-15);

  const DensityMatrix uniform = rho1({0.25, 0.25, 0.25, 0.25});
  CHECK(uniform.population({0, 0, 0}) == doctest::Approx(5.0 / 16.0));
  CHECK(uniform.trace_real() == doctest::Approx(1.0));

  CHECK_THROWS_AS(rho1({0.5, 0.5, 0.5, 0.5}), InvariantViolation);
}

TEST_CASE("rho2 structure: diagonal except the antidiagonal coherence") {
  Rho2Params pure;
  pure.n = 4;
  pure.alpha = 0.6;
  pure.beta = 0.8;
  CHECK(max_abs_diff(rho2(pure).entries(), ghz(4, 2, {0.6, 0.8}).density().entries()) < 1e-15);

  Rho2Params noise;
  noise.n = 3;
  noise.alpha = noise.beta = 1.0 / std::sqrt(2.0);
  noise.p = 1.0;
  CHECK(max_abs_diff(rho2(noise).entries(), Matrix::Identity(8, 8) / 8.0) < 1e-15);

  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 50; ++trial) {
    const Rho2Params params = evtest::random_rho2_params(4, rng);
    const DensityMatrix rho = rho2(params);
    const Eigen::Index last = rho.dims().total() - 1;
    CHECK(std::abs(rho.entries()(0, last) -
                   cplx((1.0 - params.p) * params.alpha * params.beta, 0.0)) < 1e-14);
    for (Eigen::Index i = 0; i < rho.dims().total(); ++i)
      for (Eigen::Index j = i + 1; j < rho.dims().total(); ++j)
        if (!(i == 0 && j == last)) CHECK(std::abs(rho.entries()(i, j)) < 1e-15);
  }

  Rho2Params invalid;
  invalid.n = 3;
  invalid.alpha = invalid.beta = 1.0 / std::sqrt(2.0);
  invalid.p = 0.2;
  invalid.q = 0.5;  // q > p
  CHECK_THROWS_AS(rho2(invalid), InvariantViolation);
}

TEST_CASE("rho3 structure") {
  CHECK(max_abs_diff(rho3({0.0, 0.0}).entries(), ghz(3, 5).density().entries()) < 1e-15);
  CHECK(max_abs_diff(rho3({0.0, 1.0}).entries(), Matrix::Identity(125, 125) / 125.0) < 1e-15);

  const DensityMatrix p_term = rho3({1.0, 0.0});
  CHECK(p_term.dims().dims() == std::vector<int>{5, 5, 5});
  CHECK(p_term.trace_real() == doctest::Approx(1.0));
  CHECK(max_abs_diff(partial_trace(p_term, PartySubset{1}).entries(),
                     Matrix::Identity(5, 5) / 5.0) < 1e-14);
  CHECK(max_abs_diff(partial_trace(p_term, PartySubset{2, 3}).entries(),
                     ghz(2, 5).density().entries()) < 1e-14);
  CHECK_THROWS_AS(rho3({0.7, 0.7}), InvariantViolation);
}

TEST_CASE("sigma_filtered is the stated unnormalized mixture") {
  const DensityMatrix pure_omega = sigma_filtered({0.0, 0.0, 0.0, 1.0});
  CHECK(pure_omega.population({0, 0, 0}) == doctest::Approx(4.0));
  CHECK(pure_omega.population({1, 1, 1}) == doctest::Approx(1.0 / 16.0));
  CHECK(std::abs(pure_omega.entry({0, 0, 0}, {1, 1, 1}) - cplx(0.5, 0.0)) < 1e-15);

  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    const Rho1Params params = evtest::random_rho1_params(rng);
    const DensityMatrix sigma = sigma_filtered(params);
    CHECK(std::abs(sigma.entry({0, 0, 0}, {1, 1, 1}) - cplx(params.pABC / 2.0, 0.0)) < 1e-14);
    CHECK(sigma.trace_real() == doctest::Approx(sigma_trace(params)).epsilon(1e-12));
    CHECK(normalize(sigma).trace_real() == doctest::Approx(1.0));
  }
}

TEST_CASE("channel states") {
  const DensityMatrix entangled = cj_global(1.0);
  CHECK(std::abs(entangled.entry({0, 0, 0, 0}, {1, 1, 1, 1}) - cplx(0.25, 0.0)) < 1e-15);
  CHECK(entangled.population({0, 0, 0, 0}) == doctest::Approx(0.25));

  CHECK(max_abs_diff(cj_global(0.0).entries(), Matrix::Identity(16, 16) / 16.0) < 1e-15);
  CHECK(max_abs_diff(cj_local(1.0, 1.0).entries(), cj_global(1.0).entries()) < 1e-15);
  CHECK(max_abs_diff(cj_local(0.0, 0.0).entries(), cj_global(0.0).entries()) < 1e-15);
  CHECK_THROWS_AS(cj_global(1.5), InvariantViolation);
}

TEST_CASE("every family produces valid states across random parameter draws") {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    CHECK_NOTHROW(rho1(evtest::random_rho1_params(rng)));
    CHECK_NOTHROW(rho2(evtest::random_rho2_params(3 + trial % 4, rng)));
    const double a = uni(rng), b = uni(rng) * (1.0 - a);
    CHECK_NOTHROW(rho3({a, b}));
    CHECK_NOTHROW(normalize(sigma_filtered(evtest::random_rho1_params(rng))));
    CHECK_NOTHROW(cj_local(uni(rng), uni(rng)));
    CHECK_NOTHROW(cj_global(uni(rng)));
  }
}

TEST_CASE("analytic witness helpers") {
  CHECK(analytic_w2_rho1({0.0, 0.0, 0.0, 1.0}) ==
        doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));

  Rho2Params params;
  params.n = 5;
  params.alpha = params.beta = 1.0 / std::sqrt(2.0);
  params.p = 0.4;
  params.q = 0.1;
  for (int k = 1; k <= 4; ++k) {
    const double expected =
        2.0 * ((1.0 - params.p) * 0.5 - static_cast<double>(gamma(5, k)) * (params.p - params.q) / 32.0);
    CHECK(analytic_wgamma_rho2(params, k) == doctest::Approx(expected).epsilon(1e-15));
  }

  CHECK(analytic_w2_cj_global(1.0 / 3.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(analytic_w2_cj_local(0.5, 2.0 / 3.0) == doctest::Approx(0.0).epsilon(1e-15));

  CHECK(analytic_w_filtered({0.0, 0.0, 0.4, 0.6}) == doctest::Approx(0.6 + 1.25 * 0.4));
}

TEST_CASE("witness on normalized sigma matches the filtered closed form") {
  std::mt19937_64 rng(71);
  const PairSet c1 = make_pair_set(
      HilbertDims({2, 2, 2}),
      {{{0, 0, 0}, {1, 1, 1}}, {{0, 0, 0}, {1, 1, 0}}, {{0, 0, 1}, {1, 1, 1}}});
  const PartitionFamily r1{{PartySubset{1}, PartySubset{2}}};
  for (int trial = 0; trial < 50; ++trial) {
    const Rho1Params params = evtest::random_rho1_params(rng);
    const double engine = witness(normalize(sigma_filtered(params)), c1, r1, 2).value;
    const double closed = analytic_w_filtered(params) / (std::sqrt(3.0) * sigma_trace(params));
    CHECK(std::abs(engine - closed) < 1e-12);
  }
}
