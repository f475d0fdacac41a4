// cli.hpp — command-level operations behind the evec tool: state resolution
// from files or named families, single questions with text + JSON reports,
// and two-parameter grid scans written as CSV.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "evec/tensor.hpp"

namespace evec {

// A state is named either by a file/inline JSON document or by a family name
// plus parameter map; exactly one source must be set.
struct StateSpec {
  std::string source;  // path, or inline JSON starting with '{'
  std::string family;
  std::map<std::string, double> params;
};

DensityMatrix parse_state(const StateSpec& spec);

// Family registry used by parse_state and run_scan. Families: ghz (n, d,
// optional c0..c9), rho1 (pA, pB, pC, pABC; exactly one may be omitted and is
// derived from normalization), rho2 (N, p, q, optional alpha/beta), rho3
// (p, q), sigma (rho1 parameters, normalized on output), cj_global (q),
// cj_local (q1, q2), psi_eps (eps), maximally_mixed (n, d).
DensityMatrix make_family_state(const std::string& family,
                                const std::map<std::string, double>& params);

std::map<std::string, double> parse_params(const std::string& text);

struct QuestionOptions {
  std::optional<std::string> family_text;  // --R
  std::string pair_text = "auto";          // --C
  double tol = 1e-10;                      // normal-form flatness tolerance
  int max_iter = 500;
  std::optional<std::string> out_state_path;  // normal-form output state
};

struct Report {
  std::string text;
  nlohmann::json data;
};

// question in {decompose, ksep, depth, dimension, normalform}.
Report run_question(const DensityMatrix& rho, const std::string& question,
                    const QuestionOptions& options);

struct SweepAxis {
  std::string name;
  double lo = 0.0, hi = 0.0;
  int steps = 1;  // steps = 1 pins the axis at lo
};

struct ScanSpec {
  std::string family;
  std::map<std::string, double> fixed;
  SweepAxis axis_a, axis_b;  // axis_a is the outer (row-major) sweep
  std::vector<std::string> questions;  // subset of decompose/ksep/depth/dimension
  std::optional<std::string> family_text;  // --R, for decompose/dimension
  std::string pair_text = "auto";          // --C
  int threads = 0;                         // 0 = hardware default
};

// "p=0:1:200" -> axis; two comma-separated axes form the grid.
SweepAxis parse_axis(const std::string& text);
std::pair<SweepAxis, SweepAxis> parse_grid(const std::string& text);

// Writes one CSV row per grid point in row-major sweep order: the swept
// parameters, then the witness columns of each question, then the verdict
// columns. Grid points whose parameters violate the family's domain produce
// NaN witness values and negative verdicts. Output is byte-stable: floats
// are printed with 17 significant digits.
void run_scan(const ScanSpec& spec, const std::string& out_path);

}  // namespace evec
