// serialize.hpp — JSON state files and report serialization.
//
// State file schema: a single JSON document
//   {"dims": [2,2,2], "matrix": [[[re,im], ...], ...]}
// with the matrix dense, row-major, one [re, im] pair per entry.

#pragma once

#include <string>

#include <json.hpp>

#include "evec/normalform.hpp"
#include "evec/tensor.hpp"
#include "evec/witness.hpp"

namespace evec {

nlohmann::json state_to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const nlohmann::json& doc);

void save_state(const std::string& path, const DensityMatrix& rho);
DensityMatrix load_state(const std::string& path);

std::string multiindex_to_string(const MultiIndex& eta);
MultiIndex multiindex_from_string(const std::string& text, const HilbertDims& dims);

// Pair syntax: digit strings joined by '-', pairs comma-separated,
// e.g. "000-111,000-110".
PairSet parse_pair_set(const std::string& text, const HilbertDims& dims);
std::string pair_set_to_string(const PairSet& c);

nlohmann::json witness_result_to_json(const WitnessResult& result, int n_parties);
nlohmann::json filter_set_to_json(const FilterSet& filters);

}  // namespace evec
