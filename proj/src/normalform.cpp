#include "evec/normalform.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace evec {

namespace {

double flatness_raw(const HilbertDims& dims, const Matrix& m) {
  double worst = 0.0;
  for (int p = 1; p <= dims.parties(); ++p) {
    const int d = dims.dim_of(p);
    Matrix marginal = detail::partial_trace_raw(dims, m, PartySubset{p});
    marginal -= Matrix::Identity(d, d) / static_cast<double>(d);
    worst = std::max(worst, marginal.norm());
  }
  return worst;
}

}  // namespace

DensityMatrix apply_filters(const DensityMatrix& rho, const std::vector<Matrix>& filters) {
  const auto& dims = rho.dims();
  if (static_cast<int>(filters.size()) != dims.parties())
    throw InvariantViolation("apply_filters: expected one filter per party");
  for (int p = 1; p <= dims.parties(); ++p) {
    const int d = dims.dim_of(p);
    if (filters[p - 1].rows() != d || filters[p - 1].cols() != d)
      throw InvariantViolation("apply_filters: filter " + std::to_string(p) +
                               " does not match local dimension " + std::to_string(d));
  }
  Matrix k = filters.front();
  for (std::size_t i = 1; i < filters.size(); ++i)
    k = Eigen::kroneckerProduct(k, filters[i]).eval();
  Matrix out = k * rho.entries() * k.adjoint();
  const double tr = out.trace().real();
  if (tr <= 1e-14) throw NumericalError("apply_filters: zero trace after filtering");
  out /= tr;
  out = 0.5 * (out + out.adjoint().eval());  // scrub rounding residue
  return DensityMatrix(dims, std::move(out));
}

DensityMatrix apply_filters(const DensityMatrix& rho, const FilterSet& filters) {
  return apply_filters(rho, filters.ops);
}

NormalFormResult normal_form(const DensityMatrix& rho, double tol, int max_iter,
                             double singular_tol) {
  const auto& dims = rho.dims();
  const int n = dims.parties();

  Matrix m = rho.entries() / rho.trace_real();
  std::vector<Matrix> acc;
  acc.reserve(n);
  for (int p = 1; p <= n; ++p) {
    const int d = dims.dim_of(p);
    acc.push_back(Matrix::Identity(d, d));
  }

  int sweeps = 0;
  double flat = flatness_raw(dims, m);
  while (flat > tol && sweeps < max_iter) {
    for (int p = 1; p <= n; ++p) {
      const int d = dims.dim_of(p);
      Matrix marginal = detail::partial_trace_raw(dims, m, PartySubset{p});
      Matrix filter;
      try {
        filter = inv_sqrt_psd(static_cast<double>(d) * marginal, singular_tol);
      } catch (const SingularMarginal&) {
        throw SingularMarginal("normal_form: marginal of party " + std::to_string(p) +
                               " is numerically singular; the normal form is zero or lives on "
                               "a subspace");
      }
      Matrix e = embed_operator(dims, PartySubset{p}, filter);
      m = e * m * e.adjoint();
      m /= m.trace().real();
      acc[p - 1] = filter * acc[p - 1];
    }
    ++sweeps;
    flat = flatness_raw(dims, m);
  }

  // Determinant-normalize the accumulated filters. Each factor is positive
  // definite, so the determinant of the product is a positive real.
  for (int p = 1; p <= n; ++p) {
    const int d = dims.dim_of(p);
    const double det = std::abs(acc[p - 1].determinant());
    acc[p - 1] *= std::pow(det, -1.0 / static_cast<double>(d));
  }

  m = 0.5 * (m + m.adjoint().eval());
  FilterSet fs;
  fs.ops = std::move(acc);
  fs.sweeps = sweeps;
  fs.flatness = flat;
  fs.converged = flat <= tol;
  return {DensityMatrix(dims, std::move(m)), std::move(fs)};
}

double marginal_flatness(const DensityMatrix& rho) {
  return flatness_raw(rho.dims(), rho.entries() / rho.trace_real());
}

}  // namespace evec
