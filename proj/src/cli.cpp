#include "evec/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "evec/normalform.hpp"
#include "evec/serialize.hpp"
#include "evec/states.hpp"
#include "evec/witness.hpp"

namespace evec {

using nlohmann::json;

namespace {

double take(std::map<std::string, double>& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) throw ParseError("family params: missing '" + key + "'");
  const double v = it->second;
  params.erase(it);
  return v;
}

std::optional<double> take_optional(std::map<std::string, double>& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) return std::nullopt;
  const double v = it->second;
  params.erase(it);
  return v;
}

int take_int(std::map<std::string, double>& params, const std::string& key) {
  const double v = take(params, key);
  const double r = std::round(v);
  if (std::abs(v - r) > 1e-9) throw ParseError("family params: '" + key + "' must be an integer");
  return static_cast<int>(r);
}

void expect_consumed(const std::map<std::string, double>& params, const std::string& family) {
  if (params.empty()) return;
  throw ParseError("family '" + family + "': unknown parameter '" + params.begin()->first + "'");
}

Rho1Params rho1_params_from(std::map<std::string, double> params) {
  // Exactly one of the four weights may be omitted; it absorbs the remainder.
  std::array<std::optional<double>, 4> w = {
      take_optional(params, "pA"), take_optional(params, "pB"), take_optional(params, "pC"),
      take_optional(params, "pABC")};
  expect_consumed(params, "rho1");
  int missing = 0;
  double sum = 0.0;
  for (const auto& v : w) {
    if (v.has_value())
      sum += *v;
    else
      ++missing;
  }
  if (missing > 1) throw ParseError("rho1: at most one of pA, pB, pC, pABC may be omitted");
  if (missing == 1) {
    for (auto& v : w)
      if (!v.has_value()) v = 1.0 - sum;
  }
  Rho1Params p{*w[0], *w[1], *w[2], *w[3]};
  p.validate();
  return p;
}

Rho2Params rho2_params_from(std::map<std::string, double> params) {
  Rho2Params p;
  p.n = take_int(params, "N");
  p.p = take(params, "p");
  p.q = take(params, "q");
  const auto alpha = take_optional(params, "alpha");
  const auto beta = take_optional(params, "beta");
  expect_consumed(params, "rho2");
  p.alpha = alpha.value_or(1.0 / std::sqrt(2.0));
  p.beta = beta.value_or(std::sqrt(std::max(1.0 - p.alpha * p.alpha, 0.0)));
  p.validate();
  return p;
}

}  // namespace

std::map<std::string, double> parse_params(const std::string& text) {
  std::map<std::string, double> params;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("params: expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    try {
      params[key] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw ParseError("params: cannot parse value in '" + item + "'");
    }
  }
  return params;
}

DensityMatrix make_family_state(const std::string& family,
                                const std::map<std::string, double>& params_in) {
  std::map<std::string, double> params = params_in;
  if (family == "ghz") {
    const int n = take_int(params, "n");
    const int d = take_int(params, "d");
    std::vector<double> coeffs;
    for (int i = 0; i < 10; ++i) {
      const auto c = take_optional(params, "c" + std::to_string(i));
      if (!c.has_value()) break;
      coeffs.push_back(*c);
    }
    expect_consumed(params, family);
    return ghz(n, d, coeffs).density();
  }
  if (family == "psi_eps") {
    const double eps = take(params, "eps");
    expect_consumed(params, family);
    if (eps <= 0.0 || eps > 0.5) throw InvariantViolation("psi_eps: eps must lie in (0, 0.5]");
    return ghz(3, 3, {std::sqrt(1.0 - 2.0 * eps), std::sqrt(eps), std::sqrt(eps)}).density();
  }
  if (family == "rho1") return rho1(rho1_params_from(std::move(params)));
  if (family == "rho2") return rho2(rho2_params_from(std::move(params)));
  if (family == "rho3") {
    Rho3Params p;
    p.p = take(params, "p");
    p.q = take(params, "q");
    expect_consumed(params, family);
    return rho3(p);
  }
  if (family == "sigma") return normalize(sigma_filtered(rho1_params_from(std::move(params))));
  if (family == "cj_global") {
    const double q = take(params, "q");
    expect_consumed(params, family);
    return cj_global(q);
  }
  if (family == "cj_local") {
    const double q1 = take(params, "q1");
    const double q2 = take(params, "q2");
    expect_consumed(params, family);
    return cj_local(q1, q2);
  }
  if (family == "maximally_mixed") {
    const int n = take_int(params, "n");
    const int d = take_int(params, "d");
    expect_consumed(params, family);
    HilbertDims dims(std::vector<int>(n, d));
    Matrix m = Matrix::Identity(dims.total(), dims.total()) / static_cast<double>(dims.total());
    return DensityMatrix(std::move(dims), std::move(m));
  }
  throw ParseError("unknown state family '" + family + "'");
}

DensityMatrix parse_state(const StateSpec& spec) {
  const bool have_source = !spec.source.empty();
  const bool have_family = !spec.family.empty();
  if (have_source == have_family)
    throw ParseError("state spec: exactly one of a file/inline document or a family is required");
  if (have_family) return make_family_state(spec.family, spec.params);

  std::string trimmed = spec.source;
  trimmed.erase(0, trimmed.find_first_not_of(" \t\n\r"));
  if (!trimmed.empty() && trimmed.front() == '{') {
    json doc;
    try {
      doc = json::parse(trimmed);
    } catch (const json::parse_error& e) {
      throw ParseError("state spec: " + std::string(e.what()));
    }
    if (doc.contains("family")) {
      std::map<std::string, double> params;
      if (doc.contains("params")) {
        for (const auto& [k, v] : doc["params"].items()) {
          if (!v.is_number()) throw ParseError("state spec: parameter '" + k + "' must be numeric");
          params[k] = v.get<double>();
        }
      }
      return make_family_state(doc["family"].get<std::string>(), params);
    }
    return state_from_json(doc);
  }
  return load_state(spec.source);
}

// ---- question reports ----------------------------------------------------

namespace {

std::string fmt(double v, const char* spec = "%.10g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::optional<PairSet> resolve_pairs(const DensityMatrix& rho, const std::string& pair_text) {
  if (pair_text.empty() || pair_text == "auto") return std::nullopt;
  return parse_pair_set(pair_text, rho.dims());
}

json optional_witness_json(const std::optional<WitnessResult>& w, int n) {
  return w.has_value() ? witness_result_to_json(*w, n) : json(nullptr);
}

Report report_decompose(const DensityMatrix& rho, const QuestionOptions& opt) {
  if (!opt.family_text.has_value())
    throw ParseError("decompose: a bipartition family (--R) is required");
  const PartitionFamily family = parse_family(*opt.family_text, rho.parties());
  const auto verdict = not_decomposable(rho, family, resolve_pairs(rho, opt.pair_text));

  std::ostringstream text;
  const std::string fam = family_to_string(family, rho.parties());
  text << "question: decompose over {" << fam << "}\n";
  if (verdict.evidence.has_value()) {
    text << "  W_" << verdict.evidence->j << " = " << fmt(verdict.evidence->value)
         << "  (C = " << pair_set_to_string(verdict.evidence->c_used) << ")\n";
  } else {
    text << "  no admissible coherence pair\n";
  }
  if (verdict.not_decomposable)
    text << "verdict: not decomposable over {" << fam << "}, W=" << fmt(verdict.evidence->value)
         << "\n";
  else
    text << "verdict: no certificate\n";

  json data;
  data["question"] = "decompose";
  data["family"] = fam;
  data["not_decomposable"] = verdict.not_decomposable;
  data["witness"] = optional_witness_json(verdict.evidence, rho.parties());
  return {text.str(), std::move(data)};
}

Report report_ksep(const DensityMatrix& rho, const QuestionOptions& opt) {
  const auto scan = k_separability_scan(rho, resolve_pairs(rho, opt.pair_text));
  std::ostringstream text;
  text << "question: k-separability (N=" << rho.parties() << ")\n";
  json levels = json::array();
  for (const auto& level : scan.levels) {
    text << "  k=" << level.k << " (j=" << level.j << "): ";
    if (level.result.has_value())
      text << "W = " << fmt(level.result->value) << (level.positive ? "  -> not " : "  -> ")
           << (level.positive ? std::to_string(level.k + 1) + "-separable" : "inconclusive") << "\n";
    else
      text << "no admissible coherence pair\n";
    levels.push_back({{"k", level.k},
                      {"j", level.j},
                      {"positive", level.positive},
                      {"witness", optional_witness_json(level.result, rho.parties())}});
  }
  if (scan.certified_k > 0) {
    text << "verdict: not " << scan.certified_k + 1 << "-separable";
    if (scan.gme) text << " (GME)";
    const auto& best = scan.levels[scan.levels.size() - scan.certified_k].result;
    text << ", W=" << fmt(best->value) << "\n";
  } else {
    text << "verdict: no certificate\n";
  }

  json data;
  data["question"] = "ksep";
  data["levels"] = std::move(levels);
  data["certified_k"] = scan.certified_k;
  data["gme"] = scan.gme;
  return {text.str(), std::move(data)};
}

Report report_depth(const DensityMatrix& rho, const QuestionOptions& opt) {
  const auto scan = entanglement_depth(rho, resolve_pairs(rho, opt.pair_text));
  std::ostringstream text;
  text << "question: entanglement depth (N=" << rho.parties() << ")\n";
  json levels = json::array();
  for (const auto& level : scan.levels) {
    text << "  m=" << level.m << " (|G|=" << level.family_size << "): ";
    if (level.result.has_value())
      text << "W = " << fmt(level.result->value) << (level.positive ? "  -> positive" : "  -> stops")
           << "\n";
    else
      text << "no admissible coherence pair\n";
    levels.push_back({{"m", level.m},
                      {"family_size", level.family_size},
                      {"positive", level.positive},
                      {"witness", optional_witness_json(level.result, rho.parties())}});
  }
  if (scan.n_partite)
    text << "verdict: " << rho.parties() << "-partite entangled\n";
  else if (scan.certified_depth > 0)
    text << "verdict: entanglement depth >= " << scan.certified_depth << "\n";
  else
    text << "verdict: no certificate\n";

  json data;
  data["question"] = "depth";
  data["levels"] = std::move(levels);
  data["certified_depth"] = scan.certified_depth;
  data["n_partite"] = scan.n_partite;
  return {text.str(), std::move(data)};
}

Report report_dimension(const DensityMatrix& rho, const QuestionOptions& opt) {
  const PartitionFamily family = opt.family_text.has_value()
                                     ? parse_family(*opt.family_text, rho.parties())
                                     : subsets_of_size(rho.parties(), 1);
  const auto bound = dimensionality_vector_bound(rho, family, resolve_pairs(rho, opt.pair_text));

  std::ostringstream text;
  text << "question: dimensionality over {" << family_to_string(family, rho.parties()) << "}\n";
  json per_j = json::array();
  for (std::size_t i = 0; i < bound.dimensions.size(); ++i) {
    const auto& w = bound.per_j[i];
    text << "  j=" << i + 1 << ": ";
    if (w.has_value())
      text << "W = " << fmt(w->value) << ", S2 >= " << fmt(bound.s2_bounds[i])
           << " bits, dim >= " << bound.dimensions[i] << "\n";
    else
      text << "no admissible coherence pair, dim >= 1\n";
    per_j.push_back({{"j", i + 1},
                     {"dimension", bound.dimensions[i]},
                     {"s2_bound_bits", bound.s2_bounds[i]},
                     {"witness", optional_witness_json(w, rho.parties())}});
  }
  text << "verdict: certified dimensionality vector: (";
  for (std::size_t i = 0; i < bound.dimensions.size(); ++i)
    text << (i ? "," : "") << bound.dimensions[i];
  text << ")\n";

  json data;
  data["question"] = "dimension";
  data["family"] = family_to_string(family, rho.parties());
  data["per_j"] = std::move(per_j);
  data["dimensions"] = bound.dimensions;
  return {text.str(), std::move(data)};
}

Report report_normalform(const DensityMatrix& rho, const QuestionOptions& opt) {
  const NormalFormResult result = normal_form(rho, opt.tol, opt.max_iter);
  std::ostringstream text;
  text << "question: normal form\n";
  text << "  sweeps: " << result.filters.sweeps << "\n";
  text << "  flatness: " << fmt(result.filters.flatness, "%.6g") << "\n";
  text << "  converged: " << (result.filters.converged ? "yes" : "no") << "\n";
  if (opt.out_state_path.has_value()) {
    save_state(*opt.out_state_path, result.state);
    text << "  state written to " << *opt.out_state_path << "\n";
  }
  json data;
  data["question"] = "normalform";
  data.update(filter_set_to_json(result.filters));
  data["state"] = state_to_json(result.state);
  return {text.str(), std::move(data)};
}

}  // namespace

Report run_question(const DensityMatrix& rho, const std::string& question,
                    const QuestionOptions& options) {
  if (question == "decompose") return report_decompose(rho, options);
  if (question == "ksep") return report_ksep(rho, options);
  if (question == "depth") return report_depth(rho, options);
  if (question == "dimension") return report_dimension(rho, options);
  if (question == "normalform") return report_normalform(rho, options);
  throw ParseError("unknown question '" + question +
                   "'; expected decompose|ksep|depth|dimension|normalform");
}

// ---- scans -----------------------------------------------------------------

SweepAxis parse_axis(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ParseError("grid: expected name=lo:hi:steps, got '" + text + "'");
  SweepAxis axis;
  axis.name = text.substr(0, eq);
  const std::string range = text.substr(eq + 1);
  const auto c1 = range.find(':');
  const auto c2 = range.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw ParseError("grid: expected lo:hi:steps in '" + text + "'");
  try {
    axis.lo = std::stod(range.substr(0, c1));
    axis.hi = std::stod(range.substr(c1 + 1, c2 - c1 - 1));
    axis.steps = std::stoi(range.substr(c2 + 1));
  } catch (const std::exception&) {
    throw ParseError("grid: cannot parse '" + text + "'");
  }
  if (axis.steps < 1) throw ParseError("grid: steps must be >= 1");
  return axis;
}

std::pair<SweepAxis, SweepAxis> parse_grid(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw ParseError("grid: two swept parameters required, e.g. p=0:1:200,q=0:1:200");
  return {parse_axis(text.substr(0, comma)), parse_axis(text.substr(comma + 1))};
}

namespace {

double axis_value(const SweepAxis& axis, int i) {
  if (axis.steps == 1) return axis.lo;
  return axis.lo + (axis.hi - axis.lo) * static_cast<double>(i) / (axis.steps - 1);
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct ScanColumns {
  std::vector<std::string> witness_names;
  std::vector<std::string> verdict_names;
};

struct ScanContext {
  const ScanSpec& spec;
  int n_parties = 0;
  std::optional<PartitionFamily> family;  // for decompose / dimension
  std::vector<int> ksep_ks;
  std::vector<int> depth_ms;
};

ScanColumns scan_columns(const ScanContext& ctx) {
  ScanColumns cols;
  for (const auto& q : ctx.spec.questions) {
    if (q == "decompose") {
      cols.witness_names.push_back("W_decomp");
      cols.verdict_names.push_back("not_decomposable");
    } else if (q == "ksep") {
      for (int k : ctx.ksep_ks) cols.witness_names.push_back("W_ksep_k" + std::to_string(k));
      cols.verdict_names.push_back("ksep_certified_k");
    } else if (q == "depth") {
      for (int m : ctx.depth_ms) cols.witness_names.push_back("W_depth_m" + std::to_string(m));
      cols.verdict_names.push_back("certified_depth");
    } else if (q == "dimension") {
      const int entries = ctx.family->size();
      for (int j = 1; j <= entries; ++j) cols.witness_names.push_back("W_dim_j" + std::to_string(j));
      for (int j = 1; j <= entries; ++j) cols.verdict_names.push_back("dim_j" + std::to_string(j));
    } else {
      throw ParseError("scan: unsupported question '" + q + "'");
    }
  }
  return cols;
}

// One CSV row body (witness cells, verdict cells) for a single grid point.
std::pair<std::vector<double>, std::vector<double>> evaluate_point(const ScanContext& ctx,
                                                                   double a, double b) {
  const ScanSpec& spec = ctx.spec;
  std::vector<double> witness_cells, verdict_cells;
  const double nan = std::numeric_limits<double>::quiet_NaN();

  std::optional<DensityMatrix> rho;
  try {
    std::map<std::string, double> params = spec.fixed;
    params[spec.axis_a.name] = a;
    params[spec.axis_b.name] = b;
    rho.emplace(make_family_state(spec.family, params));
  } catch (const InvariantViolation&) {
    rho.reset();  // out of the family's domain: NaN row
  }

  std::optional<PairSet> fixed_pairs;
  if (rho.has_value() && spec.pair_text != "auto" && !spec.pair_text.empty())
    fixed_pairs = parse_pair_set(spec.pair_text, rho->dims());

  for (const auto& q : spec.questions) {
    if (q == "decompose") {
      double w = nan;
      double verdict = 0.0;
      if (rho.has_value()) {
        const auto res = not_decomposable(*rho, *ctx.family, fixed_pairs);
        if (res.evidence.has_value()) w = res.evidence->value;
        verdict = res.not_decomposable ? 1.0 : 0.0;
      }
      witness_cells.push_back(w);
      verdict_cells.push_back(verdict);
    } else if (q == "ksep") {
      std::vector<double> per_k(ctx.ksep_ks.size(), nan);
      double certified = 0.0;
      if (rho.has_value()) {
        const auto scan = k_separability_scan(*rho, fixed_pairs);
        for (const auto& level : scan.levels) {
          const auto it = std::find(ctx.ksep_ks.begin(), ctx.ksep_ks.end(), level.k);
          if (it != ctx.ksep_ks.end() && level.result.has_value())
            per_k[it - ctx.ksep_ks.begin()] = level.result->value;
        }
        certified = scan.certified_k;
      }
      witness_cells.insert(witness_cells.end(), per_k.begin(), per_k.end());
      verdict_cells.push_back(certified);
    } else if (q == "depth") {
      std::vector<double> per_m(ctx.depth_ms.size(), nan);
      double certified = 0.0;
      if (rho.has_value()) {
        const auto scan = entanglement_depth(*rho, fixed_pairs);
        for (const auto& level : scan.levels) {
          if (level.m < static_cast<int>(per_m.size()) && level.result.has_value())
            per_m[level.m] = level.result->value;
        }
        certified = scan.certified_depth;
      }
      witness_cells.insert(witness_cells.end(), per_m.begin(), per_m.end());
      verdict_cells.push_back(certified);
    } else if (q == "dimension") {
      const int entries = ctx.family->size();
      std::vector<double> per_j(entries, nan);
      std::vector<double> dims_j(entries, 1.0);
      if (rho.has_value()) {
        const auto bound = dimensionality_vector_bound(*rho, *ctx.family, fixed_pairs);
        for (int j = 0; j < entries; ++j) {
          if (bound.per_j[j].has_value()) per_j[j] = bound.per_j[j]->value;
          dims_j[j] = bound.dimensions[j];
        }
      }
      witness_cells.insert(witness_cells.end(), per_j.begin(), per_j.end());
      verdict_cells.insert(verdict_cells.end(), dims_j.begin(), dims_j.end());
    }
  }
  return {std::move(witness_cells), std::move(verdict_cells)};
}

}  // namespace

void run_scan(const ScanSpec& spec, const std::string& out_path) {
  if (spec.questions.empty()) throw ParseError("scan: at least one question required");
  if (spec.axis_a.name == spec.axis_b.name) throw ParseError("scan: swept parameters must differ");

  // Probe one point to fix the party count and level structure of the grid.
  ScanContext ctx{spec};
  {
    std::optional<DensityMatrix> probe;
    for (int ia = 0; ia < spec.axis_a.steps && !probe.has_value(); ++ia)
      for (int ib = 0; ib < spec.axis_b.steps && !probe.has_value(); ++ib) {
        try {
          std::map<std::string, double> params = spec.fixed;
          params[spec.axis_a.name] = axis_value(spec.axis_a, ia);
          params[spec.axis_b.name] = axis_value(spec.axis_b, ib);
          probe.emplace(make_family_state(spec.family, params));
        } catch (const InvariantViolation&) {
          // domain hole; keep probing
        }
      }
    if (!probe.has_value())
      throw InvariantViolation("scan: no grid point lies in the family's parameter domain");
    ctx.n_parties = probe->parties();
  }
  for (int k = ctx.n_parties - 1; k >= 1; --k) ctx.ksep_ks.push_back(k);
  for (int m = 0; m <= ctx.n_parties / 2 - 1; ++m) ctx.depth_ms.push_back(m);
  const bool needs_family =
      std::find(spec.questions.begin(), spec.questions.end(), "decompose") != spec.questions.end() ||
      std::find(spec.questions.begin(), spec.questions.end(), "dimension") != spec.questions.end();
  if (needs_family) {
    ctx.family = spec.family_text.has_value()
                     ? parse_family(*spec.family_text, ctx.n_parties)
                     : subsets_of_size(ctx.n_parties, 1);
  }

  const ScanColumns cols = scan_columns(ctx);
  const int rows = spec.axis_a.steps * spec.axis_b.steps;
  std::vector<std::string> lines(rows);

  auto worker = [&](int begin, int end) {
    for (int idx = begin; idx < end; ++idx) {
      const int ia = idx / spec.axis_b.steps;
      const int ib = idx % spec.axis_b.steps;
      const double a = axis_value(spec.axis_a, ia);
      const double b = axis_value(spec.axis_b, ib);
      auto [witness_cells, verdict_cells] = evaluate_point(ctx, a, b);
      std::string line = fmt17(a) + "," + fmt17(b);
      for (double v : witness_cells) line += "," + fmt17(v);
      for (double v : verdict_cells) line += "," + fmt17(v);
      lines[idx] = std::move(line);
    }
  };

  int n_threads = spec.threads > 0 ? spec.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::clamp(n_threads, 1, 16);
  if (n_threads == 1 || rows < 4) {
    worker(0, rows);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (rows + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
      const int begin = t * chunk;
      const int end = std::min(rows, begin + chunk);
      if (begin < end) pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error("scan: cannot open '" + out_path + "' for writing");
  out << spec.axis_a.name << "," << spec.axis_b.name;
  for (const auto& name : cols.witness_names) out << "," << name;
  for (const auto& name : cols.verdict_names) out << "," << name;
  out << "\n";
  for (const auto& line : lines) out << line << "\n";
}

}  // namespace evec
