#include "evec/serialize.hpp"

#include <fstream>
#include <sstream>

namespace evec {

using nlohmann::json;

namespace {

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& doc, Eigen::Index rows, Eigen::Index cols) {
  if (!doc.is_array() || static_cast<Eigen::Index>(doc.size()) != rows)
    throw ParseError("state file: matrix must have " + std::to_string(rows) + " rows");
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = doc[i];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw ParseError("state file: row " + std::to_string(i) + " must have " +
                       std::to_string(cols) + " entries");
    for (Eigen::Index j = 0; j < cols; ++j) {
      const json& e = row[j];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw ParseError("state file: entries must be [re, im] pairs");
      m(i, j) = cplx(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

}  // namespace

json state_to_json(const DensityMatrix& rho) {
  json doc;
  doc["dims"] = rho.dims().dims();
  doc["matrix"] = matrix_to_json(rho.entries());
  return doc;
}

DensityMatrix state_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("dims") || !doc.contains("matrix"))
    throw ParseError("state file: expected an object with \"dims\" and \"matrix\"");
  if (!doc["dims"].is_array()) throw ParseError("state file: \"dims\" must be an array");
  std::vector<int> dims_list;
  for (const auto& d : doc["dims"]) {
    if (!d.is_number_integer()) throw ParseError("state file: dims entries must be integers");
    dims_list.push_back(d.get<int>());
  }
  HilbertDims dims(std::move(dims_list));
  Matrix m = matrix_from_json(doc["matrix"], dims.total(), dims.total());
  return DensityMatrix(std::move(dims), std::move(m));
}

void save_state(const std::string& path, const DensityMatrix& rho) {
  std::ofstream out(path);
  if (!out) throw Error("save_state: cannot open '" + path + "' for writing");
  out << state_to_json(rho).dump(1) << "\n";
}

DensityMatrix load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("load_state: cannot open '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ParseError("load_state: " + std::string(e.what()));
  }
  return state_from_json(doc);
}

std::string multiindex_to_string(const MultiIndex& eta) {
  std::string s;
  for (int d : eta) {
    if (d > 9) throw Error("multiindex_to_string: digit > 9 has no single-character form");
    s += static_cast<char>('0' + d);
  }
  return s;
}

MultiIndex multiindex_from_string(const std::string& text, const HilbertDims& dims) {
  if (static_cast<int>(text.size()) != dims.parties())
    throw ParseError("pair syntax: index '" + text + "' must have one digit per party (" +
                     std::to_string(dims.parties()) + ")");
  MultiIndex eta;
  for (int i = 0; i < dims.parties(); ++i) {
    const char ch = text[i];
    if (ch < '0' || ch > '9') throw ParseError("pair syntax: non-digit in '" + text + "'");
    const int digit = ch - '0';
    if (digit >= dims.dim_of(i + 1))
      throw ParseError("pair syntax: digit " + std::to_string(digit) + " out of range for party " +
                       std::to_string(i + 1));
    eta.push_back(digit);
  }
  return eta;
}

PairSet parse_pair_set(const std::string& text, const HilbertDims& dims) {
  std::vector<std::pair<MultiIndex, MultiIndex>> pairs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto dash = item.find('-');
    if (dash == std::string::npos)
      throw ParseError("pair syntax: expected 'digits-digits', got '" + item + "'");
    pairs.emplace_back(multiindex_from_string(item.substr(0, dash), dims),
                       multiindex_from_string(item.substr(dash + 1), dims));
  }
  if (pairs.empty()) throw ParseError("pair syntax: no pairs in '" + text + "'");
  return make_pair_set(dims, std::move(pairs));
}

std::string pair_set_to_string(const PairSet& c) {
  std::string s;
  for (int i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += multiindex_to_string(c.pairs[i].first) + "-" + multiindex_to_string(c.pairs[i].second);
  }
  return s;
}

json witness_result_to_json(const WitnessResult& result, int n_parties) {
  json doc;
  doc["value"] = result.value;
  doc["j"] = result.j;
  doc["family"] = family_to_string(result.family, n_parties);
  doc["C"] = pair_set_to_string(result.c_used);
  doc["s2_bound_bits"] = result.s2_bound_bits;
  doc["dimension_bound"] = result.dimension_bound;
  json pairs = json::array();
  for (const auto& ev : result.pair_details) {
    json p;
    p["pair"] = multiindex_to_string(ev.eta) + "-" + multiindex_to_string(ev.eta_prime);
    p["coherence"] = ev.coherence;
    p["min_term"] = ev.min_term;
    json subs = json::array();
    for (const auto& [r, g] : ev.min_subsets)
      subs.push_back({{"subset", subset_to_string(r, n_parties)}, {"geometric_mean", g}});
    p["min_subsets"] = std::move(subs);
    pairs.push_back(std::move(p));
  }
  doc["pairs"] = std::move(pairs);
  return doc;
}

json filter_set_to_json(const FilterSet& filters) {
  json doc;
  doc["sweeps"] = filters.sweeps;
  doc["flatness"] = filters.flatness;
  doc["converged"] = filters.converged;
  json ops = json::array();
  for (const auto& op : filters.ops) ops.push_back(matrix_to_json(op));
  doc["filters"] = std::move(ops);
  return doc;
}

}  // namespace evec
