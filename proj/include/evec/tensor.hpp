// tensor.hpp — dense complex linear algebra over multipartite Hilbert spaces:
// state types, tensor products, partial traces, Hermitian spectra and
// operator functions.
//
// Index convention (used everywhere): flat indices are row-major with party 1
// most significant, i.e. flat(eta) = ((eta_1*d_2 + eta_2)*d_3 + eta_3)...

#pragma once

#include <vector>

#include "evec/partitions.hpp"
#include "evec/types.hpp"

namespace evec {

enum class TraceTag { unit, unnormalized };
enum class NormTag { unit, unnormalized };

class HilbertDims {
 public:
  static constexpr int kMaxParties = 12;
  static constexpr Eigen::Index kMaxTotal = 4096;  // dense-storage ceiling

  explicit HilbertDims(std::vector<int> local_dims);

  const std::vector<int>& dims() const { return dims_; }
  int parties() const { return static_cast<int>(dims_.size()); }
  int dim_of(int party) const;  // 1-based party label
  Eigen::Index total() const { return total_; }

  Eigen::Index flat(const MultiIndex& idx) const;
  MultiIndex unflat(Eigen::Index flat_index) const;

  // Dims restricted to the parties in `keep`, in ascending party order.
  HilbertDims restrict_to(const PartySubset& keep) const;

  bool operator==(const HilbertDims& other) const { return dims_ == other.dims_; }
  bool operator!=(const HilbertDims& other) const { return !(*this == other); }

 private:
  std::vector<int> dims_;
  Eigen::Index total_ = 0;
};

class PureState {
 public:
  PureState(HilbertDims dims, Vector amplitudes, NormTag tag = NormTag::unit);

  const HilbertDims& dims() const { return dims_; }
  const Vector& amplitudes() const { return amps_; }
  cplx amplitude(const MultiIndex& eta) const { return amps_(dims_.flat(eta)); }
  bool normalized() const { return tag_ == NormTag::unit; }

  class DensityMatrix density() const;

 private:
  HilbertDims dims_;
  Vector amps_;
  NormTag tag_;
};

class DensityMatrix {
 public:
  // Validates hermiticity (1e-10), positivity (eigenvalues >= -1e-9) and,
  // unless tagged unnormalized, unit trace (1e-10).
  DensityMatrix(HilbertDims dims, Matrix entries, TraceTag tag = TraceTag::unit);

  const HilbertDims& dims() const { return dims_; }
  const Matrix& entries() const { return mat_; }
  int parties() const { return dims_.parties(); }

  cplx entry(const MultiIndex& eta, const MultiIndex& eta_prime) const {
    return mat_(dims_.flat(eta), dims_.flat(eta_prime));
  }
  double population(const MultiIndex& eta) const {
    return mat_(dims_.flat(eta), dims_.flat(eta)).real();
  }
  double trace_real() const { return mat_.trace().real(); }
  bool unit_trace() const { return tag_ == TraceTag::unit; }

 private:
  HilbertDims dims_;
  Matrix mat_;
  TraceTag tag_;
};

// ---- operations --------------------------------------------------------

// Tensor product in operand order (first operand = party 1 block).
DensityMatrix tensor_product(const std::vector<DensityMatrix>& ops);
PureState tensor_product(const std::vector<PureState>& states);

// Reduction keeping the parties in `keep` (trace over the complement).
DensityMatrix partial_trace(const DensityMatrix& rho, const PartySubset& keep);
// Same reduction computed by amplitude contraction, without forming the
// full projector.
DensityMatrix partial_trace(const PureState& psi, const PartySubset& keep);

// Eigenvalues of a Hermitian operator, sorted descending.
Eigen::VectorXd hermitian_spectrum(const DensityMatrix& h);

// H^(-1/2) for Hermitian PSD H. Throws SingularMarginal if the smallest
// eigenvalue is <= tol.
Matrix inv_sqrt_psd(const Matrix& h, double tol = 1e-12);
Matrix inv_sqrt_psd(const DensityMatrix& rho, double tol = 1e-12);

DensityMatrix normalize(const DensityMatrix& rho);

// Operator acting as `op` on the listed parties (ascending party order in
// the op's index blocks) and as identity on all others.
Matrix embed_operator(const HilbertDims& dims, const PartySubset& parties, const Matrix& op);

namespace detail {
// Raw-matrix partial trace; `keep` is validated against dims.
Matrix partial_trace_raw(const HilbertDims& dims, const Matrix& m, const PartySubset& keep);
}  // namespace detail

}  // namespace evec
