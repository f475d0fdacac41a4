#include "evec/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

namespace evec {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kPsdTol = -1e-9;
constexpr double kNormTol = 1e-12;

void check_keep(const HilbertDims& dims, const PartySubset& keep) {
  if (keep.empty()) throw InvariantViolation("party subset: empty set");
  for (int p : keep.members) {
    if (p < 1 || p > dims.parties())
      throw InvariantViolation("party subset: party " + std::to_string(p) + " out of range");
  }
}

}  // namespace

HilbertDims::HilbertDims(std::vector<int> local_dims) : dims_(std::move(local_dims)) {
  if (dims_.empty()) throw InvariantViolation("HilbertDims: need at least one party (dims invariant)");
  if (parties() > kMaxParties)
    throw InvariantViolation("HilbertDims: party count capped at " + std::to_string(kMaxParties) +
                             " for dense storage (dims invariant)");
  total_ = 1;
  for (int d : dims_) {
    if (d < 2) throw InvariantViolation("HilbertDims: local dimensions must be >= 2 (dims invariant)");
    total_ *= d;
    if (total_ > kMaxTotal)
      throw InvariantViolation("HilbertDims: total dimension exceeds dense ceiling " +
                               std::to_string(kMaxTotal) + " (dims invariant)");
  }
}

int HilbertDims::dim_of(int party) const {
  if (party < 1 || party > parties())
    throw InvariantViolation("HilbertDims: party " + std::to_string(party) + " out of range");
  return dims_[party - 1];
}

Eigen::Index HilbertDims::flat(const MultiIndex& idx) const {
  if (static_cast<int>(idx.size()) != parties())
    throw InvariantViolation("MultiIndex: length " + std::to_string(idx.size()) + " does not match " +
                             std::to_string(parties()) + " parties");
  Eigen::Index f = 0;
  for (int i = 0; i < parties(); ++i) {
    if (idx[i] < 0 || idx[i] >= dims_[i])
      throw InvariantViolation("MultiIndex: digit " + std::to_string(idx[i]) + " out of range for party " +
                               std::to_string(i + 1));
    f = f * dims_[i] + idx[i];
  }
  return f;
}

MultiIndex HilbertDims::unflat(Eigen::Index flat_index) const {
  MultiIndex idx(parties());
  for (int i = parties() - 1; i >= 0; --i) {
    idx[i] = static_cast<int>(flat_index % dims_[i]);
    flat_index /= dims_[i];
  }
  return idx;
}

HilbertDims HilbertDims::restrict_to(const PartySubset& keep) const {
  std::vector<int> sub;
  for (int p : keep.members) sub.push_back(dim_of(p));
  return HilbertDims(std::move(sub));
}

PureState::PureState(HilbertDims dims, Vector amplitudes, NormTag tag)
    : dims_(std::move(dims)), amps_(std::move(amplitudes)), tag_(tag) {
  if (amps_.size() != dims_.total())
    throw InvariantViolation("PureState: amplitude count " + std::to_string(amps_.size()) +
                             " does not match total dimension " + std::to_string(dims_.total()));
  if (tag_ == NormTag::unit) {
    const double nrm2 = amps_.squaredNorm();
    if (std::abs(nrm2 - 1.0) > kNormTol)
      throw InvariantViolation("PureState: squared norm " + std::to_string(nrm2) +
                               " deviates from 1 (normalization invariant)");
  }
}

DensityMatrix PureState::density() const {
  Matrix m = amps_ * amps_.adjoint();
  return DensityMatrix(dims_, std::move(m),
                       normalized() ? TraceTag::unit : TraceTag::unnormalized);
}

DensityMatrix::DensityMatrix(HilbertDims dims, Matrix entries, TraceTag tag)
    : dims_(std::move(dims)), mat_(std::move(entries)), tag_(tag) {
  if (mat_.rows() != dims_.total() || mat_.cols() != dims_.total())
    throw InvariantViolation("DensityMatrix: entries are " + std::to_string(mat_.rows()) + "x" +
                             std::to_string(mat_.cols()) + ", expected " + std::to_string(dims_.total()) +
                             " square (dims invariant)");
  const double herm_dev = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > kHermitianTol)
    throw InvariantViolation("DensityMatrix: hermiticity deviation " + std::to_string(herm_dev) +
                             " exceeds tolerance (hermitian invariant)");
  const cplx tr = mat_.trace();
  if (tag_ == TraceTag::unit && std::abs(tr - cplx(1.0, 0.0)) > kTraceTol)
    throw InvariantViolation("DensityMatrix: trace " + std::to_string(tr.real()) +
                             " deviates from 1 (trace invariant)");
  if (tag_ == TraceTag::unnormalized && tr.real() <= 0.0)
    throw InvariantViolation("DensityMatrix: nonpositive trace (trace invariant)");
  Eigen::SelfAdjointEigenSolver<Matrix> es(mat_, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("DensityMatrix: eigenvalue check failed");
  const double min_ev = es.eigenvalues().minCoeff();
  if (min_ev < kPsdTol * std::max(1.0, std::abs(tr.real())))
    throw InvariantViolation("DensityMatrix: eigenvalue " + std::to_string(min_ev) +
                             " below tolerance (psd invariant)");
}

DensityMatrix tensor_product(const std::vector<DensityMatrix>& ops) {
  if (ops.empty()) throw InvariantViolation("tensor_product: empty operand list");
  std::vector<int> dims = ops.front().dims().dims();
  Matrix m = ops.front().entries();
  bool unit = ops.front().unit_trace();
  for (std::size_t i = 1; i < ops.size(); ++i) {
    const auto& d = ops[i].dims().dims();
    dims.insert(dims.end(), d.begin(), d.end());
    m = Eigen::kroneckerProduct(m, ops[i].entries()).eval();
    unit = unit && ops[i].unit_trace();
  }
  return DensityMatrix(HilbertDims(std::move(dims)), std::move(m),
                       unit ? TraceTag::unit : TraceTag::unnormalized);
}

PureState tensor_product(const std::vector<PureState>& states) {
  if (states.empty()) throw InvariantViolation("tensor_product: empty operand list");
  std::vector<int> dims = states.front().dims().dims();
  Vector v = states.front().amplitudes();
  bool unit = states.front().normalized();
  for (std::size_t i = 1; i < states.size(); ++i) {
    const auto& d = states[i].dims().dims();
    dims.insert(dims.end(), d.begin(), d.end());
    v = Eigen::kroneckerProduct(v, states[i].amplitudes()).eval();
    unit = unit && states[i].normalized();
  }
  return PureState(HilbertDims(std::move(dims)), std::move(v),
                   unit ? NormTag::unit : NormTag::unnormalized);
}

namespace detail {

Matrix partial_trace_raw(const HilbertDims& dims, const Matrix& m, const PartySubset& keep) {
  check_keep(dims, keep);
  const int n = dims.parties();
  std::vector<int> kept, traced;
  for (int p = 1; p <= n; ++p) (keep.contains(p) ? kept : traced).push_back(p);

  HilbertDims sub = dims.restrict_to(keep);
  Eigen::Index traced_total = 1;
  for (int p : traced) traced_total *= dims.dim_of(p);

  // Compose a full multiindex from a kept sub-index and a traced sub-index.
  auto compose = [&](Eigen::Index kept_flat, Eigen::Index traced_flat) {
    MultiIndex full(n, 0);
    for (int i = static_cast<int>(kept.size()) - 1; i >= 0; --i) {
      const int d = dims.dim_of(kept[i]);
      full[kept[i] - 1] = static_cast<int>(kept_flat % d);
      kept_flat /= d;
    }
    for (int i = static_cast<int>(traced.size()) - 1; i >= 0; --i) {
      const int d = dims.dim_of(traced[i]);
      full[traced[i] - 1] = static_cast<int>(traced_flat % d);
      traced_flat /= d;
    }
    return dims.flat(full);
  };

  Matrix out = Matrix::Zero(sub.total(), sub.total());
  for (Eigen::Index a = 0; a < sub.total(); ++a) {
    for (Eigen::Index b = 0; b < sub.total(); ++b) {
      cplx sum(0.0, 0.0);
      for (Eigen::Index t = 0; t < traced_total; ++t) sum += m(compose(a, t), compose(b, t));
      out(a, b) = sum;
    }
  }
  return out;
}

}  // namespace detail

DensityMatrix partial_trace(const DensityMatrix& rho, const PartySubset& keep) {
  Matrix out = detail::partial_trace_raw(rho.dims(), rho.entries(), keep);
  return DensityMatrix(rho.dims().restrict_to(keep), std::move(out),
                       rho.unit_trace() ? TraceTag::unit : TraceTag::unnormalized);
}

DensityMatrix partial_trace(const PureState& psi, const PartySubset& keep) {
  const auto& dims = psi.dims();
  check_keep(dims, keep);
  const int n = dims.parties();
  std::vector<int> kept, traced;
  for (int p = 1; p <= n; ++p) (keep.contains(p) ? kept : traced).push_back(p);

  HilbertDims sub = dims.restrict_to(keep);
  Eigen::Index traced_total = 1;
  for (int p : traced) traced_total *= dims.dim_of(p);

  auto compose = [&](Eigen::Index kept_flat, Eigen::Index traced_flat) {
    MultiIndex full(n, 0);
    for (int i = static_cast<int>(kept.size()) - 1; i >= 0; --i) {
      const int d = dims.dim_of(kept[i]);
      full[kept[i] - 1] = static_cast<int>(kept_flat % d);
      kept_flat /= d;
    }
    for (int i = static_cast<int>(traced.size()) - 1; i >= 0; --i) {
      const int d = dims.dim_of(traced[i]);
      full[traced[i] - 1] = static_cast<int>(traced_flat % d);
      traced_flat /= d;
    }
    return dims.flat(full);
  };

  const Vector& amps = psi.amplitudes();
  Matrix out = Matrix::Zero(sub.total(), sub.total());
  for (Eigen::Index a = 0; a < sub.total(); ++a) {
    for (Eigen::Index b = 0; b < sub.total(); ++b) {
      cplx sum(0.0, 0.0);
      for (Eigen::Index t = 0; t < traced_total; ++t)
        sum += amps(compose(a, t)) * std::conj(amps(compose(b, t)));
      out(a, b) = sum;
    }
  }
  return DensityMatrix(sub, std::move(out),
                       psi.normalized() ? TraceTag::unit : TraceTag::unnormalized);
}

Eigen::VectorXd hermitian_spectrum(const DensityMatrix& h) {
  // The constructor already enforces hermiticity; solve and sort descending.
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.entries(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("hermitian_spectrum: eigensolve failed");
  Eigen::VectorXd ev = es.eigenvalues();
  std::sort(ev.data(), ev.data() + ev.size(), std::greater<double>());
  return ev;
}

Matrix inv_sqrt_psd(const Matrix& h, double tol) {
  const double herm_dev = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > kHermitianTol * std::max(1.0, h.cwiseAbs().maxCoeff()))
    throw InvariantViolation("inv_sqrt_psd: input is not hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success) throw NumericalError("inv_sqrt_psd: eigensolve failed");
  const Eigen::VectorXd& ev = es.eigenvalues();
  if (ev.minCoeff() <= tol)
    throw SingularMarginal("inv_sqrt_psd: eigenvalue " + std::to_string(ev.minCoeff()) +
                           " <= tolerance " + std::to_string(tol));
  Eigen::VectorXd inv_sqrt = ev.array().rsqrt();
  return es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix inv_sqrt_psd(const DensityMatrix& rho, double tol) {
  return inv_sqrt_psd(rho.entries(), tol);
}

DensityMatrix normalize(const DensityMatrix& rho) {
  const double tr = rho.trace_real();
  if (tr <= 1e-14) throw NumericalError("normalize: trace " + std::to_string(tr) + " <= 1e-14");
  return DensityMatrix(rho.dims(), rho.entries() / tr, TraceTag::unit);
}

Matrix embed_operator(const HilbertDims& dims, const PartySubset& parties, const Matrix& op) {
  check_keep(dims, parties);
  HilbertDims sub = dims.restrict_to(parties);
  if (op.rows() != sub.total() || op.cols() != sub.total())
    throw InvariantViolation("embed_operator: operator is " + std::to_string(op.rows()) + "x" +
                             std::to_string(op.cols()) + ", expected " + std::to_string(sub.total()));
  const int n = dims.parties();
  std::vector<int> rest_parties;
  for (int p = 1; p <= n; ++p)
    if (!parties.contains(p)) rest_parties.push_back(p);
  Eigen::Index rest_total = 1;
  for (int p : rest_parties) rest_total *= dims.dim_of(p);

  auto compose = [&](Eigen::Index sub_flat, Eigen::Index rest_flat) {
    MultiIndex full(n, 0);
    for (int i = static_cast<int>(parties.members.size()) - 1; i >= 0; --i) {
      const int d = dims.dim_of(parties.members[i]);
      full[parties.members[i] - 1] = static_cast<int>(sub_flat % d);
      sub_flat /= d;
    }
    for (int i = static_cast<int>(rest_parties.size()) - 1; i >= 0; --i) {
      const int d = dims.dim_of(rest_parties[i]);
      full[rest_parties[i] - 1] = static_cast<int>(rest_flat % d);
      rest_flat /= d;
    }
    return dims.flat(full);
  };

  Matrix out = Matrix::Zero(dims.total(), dims.total());
  for (Eigen::Index a = 0; a < sub.total(); ++a)
    for (Eigen::Index b = 0; b < sub.total(); ++b) {
      const cplx v = op(a, b);
      if (v == cplx(0.0, 0.0)) continue;
      for (Eigen::Index r = 0; r < rest_total; ++r) out(compose(a, r), compose(b, r)) = v;
    }
  return out;
}

}  // namespace evec
