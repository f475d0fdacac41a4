// types.hpp — shared scalar/matrix aliases and the error taxonomy.

#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace evec {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// One computational-basis digit per party, 0 <= digit < d_i, party 1 first.
using MultiIndex = std::vector<int>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual or JSON input (CLI exit code 2).
class ParseError : public Error {
 public:
  using Error::Error;
};

// A domain-type invariant does not hold (CLI exit code 3).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// Well-formed input on which the computation cannot proceed (CLI exit code 4).
class NumericalError : public Error {
 public:
  using Error::Error;
};

// A reduction is numerically rank-deficient, so no invertible filter exists.
class SingularMarginal : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// No admissible off-diagonal entry is available to build a pair set from.
class EmptyPairSet : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace evec
