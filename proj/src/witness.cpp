#include "evec/witness.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace evec {

namespace {

void check_family(const HilbertDims& dims, const PartitionFamily& family) {
  if (family.empty()) throw InvariantViolation("witness: empty partition family");
  for (const auto& r : family.subsets) {
    if (r.empty()) throw InvariantViolation("witness: empty subset in family");
    if (r.size() >= dims.parties())
      throw InvariantViolation("witness: subset covers all parties; bipartitions must be proper");
    for (int p : r.members)
      if (p < 1 || p > dims.parties())
        throw InvariantViolation("witness: party " + std::to_string(p) + " out of range");
  }
}

struct PairTerm {
  double coherence = 0.0;
  double min_sum = 0.0;
  std::vector<std::pair<int, double>> chosen;  // (family index, geometric mean)
};

PairTerm evaluate_pair(const DensityMatrix& rho, const MultiIndex& eta,
                       const MultiIndex& eta_prime, const PartitionFamily& family, int j) {
  PairTerm term;
  term.coherence = std::abs(rho.entry(eta, eta_prime));
  std::vector<std::pair<double, int>> g_terms;
  g_terms.reserve(family.subsets.size());
  for (int ri = 0; ri < family.size(); ++ri) {
    auto [mu, mu_prime] = swap_pair(eta, eta_prime, family.subsets[ri]);
    // Populations can carry tiny negative rounding residue; clamp before the
    // square root.
    const double d1 = std::max(rho.population(mu), 0.0);
    const double d2 = std::max(rho.population(mu_prime), 0.0);
    g_terms.emplace_back(std::sqrt(d1 * d2), ri);
  }
  std::sort(g_terms.begin(), g_terms.end());
  for (int m = 0; m < j; ++m) {
    term.min_sum += g_terms[m].first;
    term.chosen.emplace_back(g_terms[m].second, g_terms[m].first);
  }
  return term;
}

// A pair is invariant under the swap on r when the two multiindices agree on
// every digit inside r (the swap is the identity) or on every digit outside
// r (the swap exchanges the two). Either way the pair's own diagonal
// geometric mean dominates its coherence and the contribution cannot be
// positive, so such pairs are excluded from selection.
bool admissible_pair(const MultiIndex& eta, const MultiIndex& eta_prime,
                     const PartitionFamily& family) {
  for (const auto& r : family.subsets) {
    bool same_inside = true;
    bool same_outside = true;
    for (std::size_t i = 0; i < eta.size(); ++i) {
      const bool in_r = r.contains(static_cast<int>(i) + 1);
      if (eta[i] != eta_prime[i]) (in_r ? same_inside : same_outside) = false;
    }
    if (same_inside || same_outside) return false;
  }
  return true;
}

}  // namespace

PairSet make_pair_set(const HilbertDims& dims,
                      std::vector<std::pair<MultiIndex, MultiIndex>> pairs) {
  if (pairs.empty()) throw InvariantViolation("PairSet: at least one pair required");
  std::set<std::pair<Eigen::Index, Eigen::Index>> seen;
  PairSet out;
  for (auto& [a, b] : pairs) {
    const Eigen::Index fa = dims.flat(a);
    const Eigen::Index fb = dims.flat(b);
    if (fa == fb) throw InvariantViolation("PairSet: eta == eta' is not a coherence");
    auto key = std::minmax(fa, fb);
    if (!seen.insert(key).second) throw InvariantViolation("PairSet: duplicate pair");
    if (fa <= fb)
      out.pairs.emplace_back(std::move(a), std::move(b));
    else
      out.pairs.emplace_back(std::move(b), std::move(a));
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

WitnessResult witness(const DensityMatrix& rho, const PairSet& c,
                      const PartitionFamily& family, int j) {
  check_family(rho.dims(), family);
  if (j < 1 || j > family.size())
    throw InvariantViolation("witness: j = " + std::to_string(j) + " outside [1, " +
                             std::to_string(family.size()) + "]");
  if (c.empty()) throw InvariantViolation("witness: empty pair set");

  WitnessResult res;
  res.j = j;
  res.family = family;
  res.c_used = c;

  double sum = 0.0;
  for (const auto& [eta, eta_prime] : c.pairs) {
    PairTerm term = evaluate_pair(rho, eta, eta_prime, family, j);
    sum += term.coherence - term.min_sum;
    PairEvidence ev;
    ev.eta = eta;
    ev.eta_prime = eta_prime;
    ev.coherence = term.coherence;
    ev.min_term = term.min_sum;
    for (auto [ri, g] : term.chosen) ev.min_subsets.emplace_back(family.subsets[ri], g);
    res.pair_details.push_back(std::move(ev));
  }
  res.value = 2.0 / std::sqrt(static_cast<double>(c.size())) * sum;
  if (res.value > 0.0) {
    // Values >= sqrt(2) are impossible here; the converters throw on them.
    res.s2_bound_bits = s2_bound_from_witness(res.value);
    res.dimension_bound = dimension_from_witness(res.value);
  }
  return res;
}

PairSet select_pairs(const DensityMatrix& rho, const PartitionFamily& family, int j,
                     int max_pairs) {
  check_family(rho.dims(), family);
  if (j < 1 || j > family.size())
    throw InvariantViolation("select_pairs: j = " + std::to_string(j) + " outside [1, " +
                             std::to_string(family.size()) + "]");
  const auto& dims = rho.dims();
  int budget = max_pairs;
  if (budget <= 0) budget = 2 * *std::max_element(dims.dims().begin(), dims.dims().end());

  struct Candidate {
    double t;  // coherence minus min-term; the pair's witness contribution
    Eigen::Index a, b;
  };
  std::vector<Candidate> candidates;
  const Matrix& m = rho.entries();
  for (Eigen::Index a = 0; a < dims.total(); ++a) {
    MultiIndex eta = dims.unflat(a);
    for (Eigen::Index b = a + 1; b < dims.total(); ++b) {
      if (std::abs(m(a, b)) <= kCoherenceCutoff) continue;
      MultiIndex eta_prime = dims.unflat(b);
      if (!admissible_pair(eta, eta_prime, family)) continue;
      PairTerm term = evaluate_pair(rho, eta, eta_prime, family, j);
      candidates.push_back({term.coherence - term.min_sum, a, b});
    }
  }
  if (candidates.empty())
    throw EmptyPairSet("select_pairs: no admissible off-diagonal entry above " +
                       std::to_string(kCoherenceCutoff));

  std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
    if (x.t != y.t) return x.t > y.t;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  });

  // W over a size-s set is (2/sqrt(s)) * (sum of the s largest contributions),
  // so the maximum over all subsets is attained on a prefix of the ranking.
  const int limit = std::min<int>(budget, static_cast<int>(candidates.size()));
  double prefix = 0.0;
  double best_value = -std::numeric_limits<double>::infinity();
  int best_size = 1;
  for (int s = 1; s <= limit; ++s) {
    prefix += candidates[s - 1].t;
    const double value = 2.0 / std::sqrt(static_cast<double>(s)) * prefix;
    if (value > best_value) {
      best_value = value;
      best_size = s;
    }
  }

  std::vector<std::pair<MultiIndex, MultiIndex>> pairs;
  pairs.reserve(best_size);
  for (int i = 0; i < best_size; ++i)
    pairs.emplace_back(dims.unflat(candidates[i].a), dims.unflat(candidates[i].b));
  return make_pair_set(dims, std::move(pairs));
}

DecomposabilityVerdict not_decomposable(const DensityMatrix& rho, const PartitionFamily& family,
                                        const std::optional<PairSet>& c) {
  DecomposabilityVerdict verdict;
  verdict.family = family;
  PairSet pairs;
  if (c.has_value()) {
    pairs = *c;
  } else {
    try {
      pairs = select_pairs(rho, family, family.size());
    } catch (const EmptyPairSet&) {
      return verdict;  // nothing to witness with: no certificate
    }
  }
  verdict.evidence = witness(rho, pairs, family, family.size());
  verdict.not_decomposable = verdict.evidence->value > kWitnessPositivityThreshold;
  return verdict;
}

SeparabilityScan k_separability_scan(const DensityMatrix& rho, const std::optional<PairSet>& c) {
  const int n = rho.parties();
  if (n < 2) throw InvariantViolation("k_separability_scan: need at least 2 parties");
  const PartitionFamily total = all_bipartitions(n);
  SeparabilityScan scan;
  for (int k = n - 1; k >= 1; --k) {
    SeparabilityLevel level;
    level.k = k;
    level.j = gamma(n, k);
    PairSet pairs;
    bool have_pairs = true;
    if (c.has_value()) {
      pairs = *c;
    } else {
      try {
        pairs = select_pairs(rho, total, static_cast<int>(level.j));
      } catch (const EmptyPairSet&) {
        have_pairs = false;
      }
    }
    if (have_pairs) {
      level.result = witness(rho, pairs, total, static_cast<int>(level.j));
      level.positive = level.result->value > kWitnessPositivityThreshold;
    }
    if (level.positive) scan.certified_k = k;
    scan.levels.push_back(std::move(level));
  }
  scan.gme = scan.certified_k == 1;
  return scan;
}

DepthScan entanglement_depth(const DensityMatrix& rho, const std::optional<PairSet>& c) {
  const int n = rho.parties();
  if (n < 2) throw InvariantViolation("entanglement_depth: need at least 2 parties");
  DepthScan scan;
  bool chain_intact = true;
  for (int m = 0; m <= n / 2 - 1; ++m) {
    DepthLevel level;
    level.m = m;
    const PartitionFamily g_m = depth_family(n, m);
    level.family_size = g_m.size();
    PairSet pairs;
    bool have_pairs = true;
    if (c.has_value()) {
      pairs = *c;
    } else {
      try {
        pairs = select_pairs(rho, g_m, g_m.size());
      } catch (const EmptyPairSet&) {
        have_pairs = false;
      }
    }
    if (have_pairs) {
      level.result = witness(rho, pairs, g_m, g_m.size());
      level.positive = level.result->value > kWitnessPositivityThreshold;
    }
    // Certification at level m presumes every previous level passed.
    if (chain_intact && level.positive)
      scan.certified_depth = (n + 1) / 2 + m;
    else
      chain_intact = false;
    scan.levels.push_back(std::move(level));
  }
  scan.n_partite = chain_intact && scan.certified_depth > 0;
  if (scan.n_partite) scan.certified_depth = n;
  return scan;
}

DimensionalityBound dimensionality_vector_bound(const DensityMatrix& rho,
                                                const PartitionFamily& family,
                                                const std::optional<PairSet>& c) {
  check_family(rho.dims(), family);
  DimensionalityBound bound;
  for (int j = 1; j <= family.size(); ++j) {
    std::optional<WitnessResult> result;
    PairSet pairs;
    bool have_pairs = true;
    if (c.has_value()) {
      pairs = *c;
    } else {
      try {
        pairs = select_pairs(rho, family, j);
      } catch (const EmptyPairSet&) {
        have_pairs = false;
      }
    }
    if (have_pairs) result = witness(rho, pairs, family, j);
    const double value = result ? result->value : 0.0;
    bound.dimensions.push_back(value > kWitnessPositivityThreshold ? dimension_from_witness(value) : 1);
    bound.s2_bounds.push_back(value > kWitnessPositivityThreshold ? s2_bound_from_witness(value) : 0.0);
    bound.per_j.push_back(std::move(result));
  }
  return bound;
}

std::int64_t coherence_budget(const HilbertDims& dims, const PairSet& c,
                              const PartitionFamily& family, int j) {
  check_family(dims, family);
  if (j < 1 || j > family.size())
    throw InvariantViolation("coherence_budget: j = " + std::to_string(j) + " outside [1, " +
                             std::to_string(family.size()) + "]");
  if (c.empty()) throw InvariantViolation("coherence_budget: empty pair set");
  std::int64_t count = c.size();
  for (const auto& [eta, eta_prime] : c.pairs) {
    std::set<Eigen::Index> swapped;
    for (const auto& r : family.subsets) {
      auto [mu, mu_prime] = swap_pair(eta, eta_prime, r);
      swapped.insert(dims.flat(mu));
      swapped.insert(dims.flat(mu_prime));
    }
    count += static_cast<std::int64_t>(swapped.size());
  }
  return count;
}

}  // namespace evec
