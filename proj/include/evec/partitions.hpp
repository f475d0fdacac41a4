// partitions.hpp — party-subset combinatorics: bipartition families, the
// gamma(k) separability counter, the depth families G_m, and the multiindex
// digit swap that underlies every witness term.
//
// Parties are labelled 1..n internally and A..L in all text I/O. Bipartitions
// are identified with the party subset on one side; two subsets describe the
// same bipartition iff one is the complement of the other, and the canonical
// representative is the side containing party 1.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "evec/types.hpp"

namespace evec {

struct PartySubset {
  std::vector<int> members;  // sorted, unique, 1-based

  PartySubset() = default;
  explicit PartySubset(std::vector<int> parties);
  PartySubset(std::initializer_list<int> parties);

  int size() const { return static_cast<int>(members.size()); }
  bool empty() const { return members.empty(); }
  bool contains(int party) const;

  PartySubset complement(int n_parties) const;
  // Side of the bipartition that contains party 1.
  PartySubset canonical(int n_parties) const;

  bool operator==(const PartySubset& other) const { return members == other.members; }
  bool operator<(const PartySubset& other) const;
};

struct PartitionFamily {
  std::vector<PartySubset> subsets;

  PartitionFamily() = default;
  explicit PartitionFamily(std::vector<PartySubset> s) : subsets(std::move(s)) {}

  int size() const { return static_cast<int>(subsets.size()); }
  bool empty() const { return subsets.empty(); }
};

// All 2^(n-1) - 1 bipartitions of n parties, canonical representatives,
// ordered by increasing bitmask of the representative.
PartitionFamily all_bipartitions(int n_parties);

// All binomial(n, h) subsets of exactly h parties, 1 <= h <= n-1, in
// lexicographic order. Complementary subsets are kept distinct here.
PartitionFamily subsets_of_size(int n_parties, int h);

// Number of bipartitions that must carry entanglement to rule out
// (k+1)-separability: gamma(k) = 2^(N-1) - 2^k + 1, for 1 <= k <= N-1.
std::int64_t gamma(int n_parties, int k);

// The family G_m = union of the size-(ceil(N/2)+i) subset families for
// i = 0..m, with complementary subsets identified (canonicalized), so each
// bipartition appears once. Valid for 0 <= m <= floor(N/2) - 1.
PartitionFamily depth_family(int n_parties, int m);

// Exchange the digits on the parties in `r` between the two multiindices;
// digits elsewhere are untouched. Applying it twice restores the input.
std::pair<MultiIndex, MultiIndex> swap_pair(const MultiIndex& eta,
                                            const MultiIndex& eta_prime,
                                            const PartySubset& r);

// ---- text forms -------------------------------------------------------

// Accepts "A|BC" (subset left of the bar; the two sides must be disjoint and
// jointly cover all parties) or a bare letter run "AB". Case-insensitive.
PartySubset parse_subset(const std::string& text, int n_parties);

// Comma-separated subsets, e.g. "A|BC,B|AC".
PartitionFamily parse_family(const std::string& text, int n_parties);

std::string subset_letters(const PartySubset& r);
// Renders the full bipartition, e.g. "A|BC".
std::string subset_to_string(const PartySubset& r, int n_parties);
std::string family_to_string(const PartitionFamily& family, int n_parties);

}  // namespace evec
