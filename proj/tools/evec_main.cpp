// evec — entropy-vector entanglement witness CLI.
//
// Exit codes: 0 success (regardless of verdict), 2 parse error, 3 invariant
// violation, 4 numerical failure.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "evec/cli.hpp"
#include "evec/serialize.hpp"
#include "evec/witness.hpp"

namespace {

struct CommonStateArgs {
  std::string state;
  std::string family;
  std::string params;
};

void add_state_flags(CLI::App* cmd, CommonStateArgs& args) {
  cmd->add_option("--state", args.state, "State file path or inline JSON document");
  cmd->add_option("--family", args.family, "Named state family (ghz, rho1, rho2, rho3, sigma, "
                                           "cj_global, cj_local, psi_eps, maximally_mixed)");
  cmd->add_option("--params", args.params, "Family parameters, e.g. pABC=0.25,pA=0.25");
}

evec::DensityMatrix resolve_state(const CommonStateArgs& args) {
  evec::StateSpec spec;
  spec.source = args.state;
  spec.family = args.family;
  if (!args.params.empty()) spec.params = evec::parse_params(args.params);
  return evec::parse_state(spec);
}

void write_json(const std::string& path, const nlohmann::json& doc) {
  std::ofstream out(path);
  if (!out) throw evec::Error("cannot open '" + path + "' for writing");
  out << doc.dump(1) << "\n";
}

int run(int argc, char** argv) {
  CLI::App app{"entropy-vector entanglement witnesses for multi-qudit density matrices"};
  app.require_subcommand(1);

  // witness: one W_j evaluation with explicit R and C.
  CommonStateArgs w_state;
  std::string w_r, w_c = "auto", w_json;
  int w_j = 0;
  std::uint64_t seed = 0;  // reserved for stochastic subroutines
  auto* w_cmd = app.add_subcommand("witness", "Evaluate the witness W_j for a family R and pair set C");
  add_state_flags(w_cmd, w_state);
  w_cmd->add_option("--R", w_r, "Bipartition family, e.g. \"A|BC,B|AC\"")->required();
  w_cmd->add_option("--C", w_c, "Pair set \"000-111,000-110\" or \"auto\"");
  w_cmd->add_option("--j", w_j, "Entropy-vector entry index, 1-based")->required();
  w_cmd->add_option("--json", w_json, "Write the machine-readable result to this path");
  w_cmd->add_option("--seed", seed, "Random seed (reserved; current questions are deterministic)");

  // classify: a batch of questions.
  CommonStateArgs c_state;
  std::string c_questions = "ksep,depth,dimension", c_r, c_c = "auto", c_json;
  auto* c_cmd = app.add_subcommand("classify", "Run classification questions and report verdicts");
  add_state_flags(c_cmd, c_state);
  c_cmd->add_option("--questions", c_questions, "Comma list of decompose,ksep,depth,dimension");
  c_cmd->add_option("--R", c_r, "Bipartition family for decompose/dimension");
  c_cmd->add_option("--C", c_c, "Pair set or \"auto\"");
  c_cmd->add_option("--json", c_json, "Write the machine-readable report to this path");
  c_cmd->add_option("--seed", seed, "Random seed (reserved; current questions are deterministic)");

  // scan: 2-D parameter grid to CSV.
  std::string s_family, s_params, s_grid, s_questions, s_r, s_c = "auto", s_out;
  int s_threads = 0;
  auto* s_cmd = app.add_subcommand("scan", "Sweep two family parameters and write witness columns as CSV");
  s_cmd->add_option("--family", s_family, "State family to sweep")->required();
  s_cmd->add_option("--params", s_params, "Fixed family parameters");
  s_cmd->add_option("--grid", s_grid, "Two axes, e.g. p=0:1:200,q=0:1:200")->required();
  s_cmd->add_option("--questions", s_questions, "Comma list of decompose,ksep,depth,dimension")
      ->required();
  s_cmd->add_option("--R", s_r, "Bipartition family for decompose/dimension");
  s_cmd->add_option("--C", s_c, "Pair set or \"auto\"");
  s_cmd->add_option("--out", s_out, "Output CSV path")->required();
  s_cmd->add_option("--threads", s_threads, "Worker threads (0 = hardware default)");
  s_cmd->add_option("--seed", seed, "Random seed (reserved; current questions are deterministic)");

  // normal-form: iterate to flat marginals.
  CommonStateArgs n_state;
  std::string n_out, n_json;
  double n_tol = 1e-10;
  int n_max_iter = 500;
  auto* n_cmd = app.add_subcommand("normal-form", "Filter the state until all single-party "
                                                  "reductions are proportional to the identity");
  add_state_flags(n_cmd, n_state);
  n_cmd->add_option("--tol", n_tol, "Marginal flatness tolerance");
  n_cmd->add_option("--max-iter", n_max_iter, "Sweep budget");
  n_cmd->add_option("--out", n_out, "Write the normal form as a state file");
  n_cmd->add_option("--json", n_json, "Write the machine-readable report (filters, metadata)");

  CLI11_PARSE(app, argc, argv);

  if (w_cmd->parsed()) {
    const evec::DensityMatrix rho = resolve_state(w_state);
    const evec::PartitionFamily family = evec::parse_family(w_r, rho.parties());
    evec::PairSet pairs = (w_c == "auto") ? evec::select_pairs(rho, family, w_j)
                                          : evec::parse_pair_set(w_c, rho.dims());
    const evec::WitnessResult result = evec::witness(rho, pairs, family, w_j);
    std::cout << "W_" << w_j << " over {" << evec::family_to_string(family, rho.parties())
              << "} with C = " << evec::pair_set_to_string(result.c_used) << "\n";
    std::cout << "value: " << result.value << "\n";
    if (result.value > evec::kWitnessPositivityThreshold)
      std::cout << "S2 bound: " << result.s2_bound_bits
                << " bits, dimension bound: " << result.dimension_bound << "\n";
    if (!w_json.empty()) write_json(w_json, evec::witness_result_to_json(result, rho.parties()));
    return 0;
  }

  if (c_cmd->parsed()) {
    const evec::DensityMatrix rho = resolve_state(c_state);
    evec::QuestionOptions opt;
    if (!c_r.empty()) opt.family_text = c_r;
    opt.pair_text = c_c;
    nlohmann::json all = nlohmann::json::array();
    std::stringstream ss(c_questions);
    std::string q;
    while (std::getline(ss, q, ',')) {
      if (q.empty()) continue;
      const evec::Report report = evec::run_question(rho, q, opt);
      std::cout << report.text;
      all.push_back(report.data);
    }
    if (!c_json.empty()) write_json(c_json, all);
    return 0;
  }

  if (s_cmd->parsed()) {
    evec::ScanSpec spec;
    spec.family = s_family;
    if (!s_params.empty()) spec.fixed = evec::parse_params(s_params);
    std::tie(spec.axis_a, spec.axis_b) = evec::parse_grid(s_grid);
    std::stringstream ss(s_questions);
    std::string q;
    while (std::getline(ss, q, ',')) {
      if (!q.empty()) spec.questions.push_back(q);
    }
    if (!s_r.empty()) spec.family_text = s_r;
    spec.pair_text = s_c;
    spec.threads = s_threads;
    evec::run_scan(spec, s_out);
    std::cout << "wrote " << spec.axis_a.steps * spec.axis_b.steps << " rows to " << s_out << "\n";
    return 0;
  }

  if (n_cmd->parsed()) {
    const evec::DensityMatrix rho = resolve_state(n_state);
    evec::QuestionOptions opt;
    opt.tol = n_tol;
    opt.max_iter = n_max_iter;
    if (!n_out.empty()) opt.out_state_path = n_out;
    const evec::Report report = evec::run_question(rho, "normalform", opt);
    std::cout << report.text;
    if (!n_json.empty()) write_json(n_json, report.data);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const evec::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const evec::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const evec::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 4;
  } catch (const evec::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
