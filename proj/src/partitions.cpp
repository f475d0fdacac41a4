#include "evec/partitions.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

namespace evec {

namespace {

void check_party_count(int n) {
  if (n < 2) throw InvariantViolation("partitions: need at least 2 parties, got " + std::to_string(n));
  if (n > 12) throw InvariantViolation("partitions: party count capped at 12, got " + std::to_string(n));
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

PartySubset::PartySubset(std::vector<int> parties) : members(std::move(parties)) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (int p : members) {
    if (p < 1) throw InvariantViolation("PartySubset: party labels are 1-based, got " + std::to_string(p));
  }
}

PartySubset::PartySubset(std::initializer_list<int> parties)
    : PartySubset(std::vector<int>(parties)) {}

bool PartySubset::contains(int party) const {
  return std::binary_search(members.begin(), members.end(), party);
}

PartySubset PartySubset::complement(int n_parties) const {
  std::vector<int> rest;
  for (int p = 1; p <= n_parties; ++p)
    if (!contains(p)) rest.push_back(p);
  return PartySubset(std::move(rest));
}

PartySubset PartySubset::canonical(int n_parties) const {
  if (empty()) throw InvariantViolation("PartySubset: empty subset has no canonical bipartition side");
  if (size() >= n_parties)
    throw InvariantViolation("PartySubset: full party set is not a bipartition side");
  return contains(1) ? *this : complement(n_parties);
}

bool PartySubset::operator<(const PartySubset& other) const {
  if (members.size() != other.members.size()) return members.size() < other.members.size();
  return members < other.members;
}

PartitionFamily all_bipartitions(int n_parties) {
  check_party_count(n_parties);
  // Canonical representatives are exactly the proper subsets containing party 1.
  std::vector<PartySubset> out;
  const int rest = n_parties - 1;
  for (int mask = 0; mask < (1 << rest) - 1; ++mask) {
    std::vector<int> members = {1};
    for (int b = 0; b < rest; ++b)
      if (mask & (1 << b)) members.push_back(b + 2);
    out.emplace_back(std::move(members));
  }
  return PartitionFamily(std::move(out));
}

PartitionFamily subsets_of_size(int n_parties, int h) {
  check_party_count(n_parties);
  if (h < 1 || h > n_parties - 1)
    throw InvariantViolation("subsets_of_size: h must satisfy 1 <= h <= n-1, got h=" + std::to_string(h));
  std::vector<PartySubset> out;
  std::vector<int> pick(h);
  std::iota(pick.begin(), pick.end(), 1);
  while (true) {
    out.emplace_back(pick);
    int i = h - 1;
    while (i >= 0 && pick[i] == n_parties - (h - 1 - i)) --i;
    if (i < 0) break;
    ++pick[i];
    for (int t = i + 1; t < h; ++t) pick[t] = pick[t - 1] + 1;
  }
  return PartitionFamily(std::move(out));
}

std::int64_t gamma(int n_parties, int k) {
  check_party_count(n_parties);
  if (k < 1 || k > n_parties - 1)
    throw InvariantViolation("gamma: k must satisfy 1 <= k <= N-1, got k=" + std::to_string(k));
  return (std::int64_t{1} << (n_parties - 1)) - (std::int64_t{1} << k) + 1;
}

PartitionFamily depth_family(int n_parties, int m) {
  check_party_count(n_parties);
  const int m_max = n_parties / 2 - 1;
  if (m < 0 || m > m_max)
    throw InvariantViolation("depth_family: m must satisfy 0 <= m <= floor(N/2)-1, got m=" + std::to_string(m));
  const int h0 = (n_parties + 1) / 2;
  std::vector<PartySubset> out;
  std::set<PartySubset> seen;
  for (int i = 0; i <= m; ++i) {
    for (const auto& r : subsets_of_size(n_parties, h0 + i).subsets) {
      PartySubset rep = r.canonical(n_parties);
      if (seen.insert(rep).second) out.push_back(std::move(rep));
    }
  }
  return PartitionFamily(std::move(out));
}

std::pair<MultiIndex, MultiIndex> swap_pair(const MultiIndex& eta,
                                            const MultiIndex& eta_prime,
                                            const PartySubset& r) {
  if (eta.size() != eta_prime.size())
    throw InvariantViolation("swap_pair: multiindex lengths differ");
  MultiIndex a = eta;
  MultiIndex b = eta_prime;
  for (int p : r.members) {
    if (p < 1 || p > static_cast<int>(eta.size()))
      throw InvariantViolation("swap_pair: party " + std::to_string(p) + " out of range");
    std::swap(a[p - 1], b[p - 1]);
  }
  return {std::move(a), std::move(b)};
}

namespace {

std::vector<int> parse_letter_run(const std::string& text, int n_parties) {
  std::vector<int> parties;
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    const char up = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    if (up < 'A' || up >= 'A' + n_parties)
      throw ParseError(std::string("parse_subset: unknown party letter '") + ch + "'");
    parties.push_back(up - 'A' + 1);
  }
  return parties;
}

}  // namespace

PartySubset parse_subset(const std::string& text, int n_parties) {
  check_party_count(n_parties);
  const auto bar = text.find('|');
  if (bar == std::string::npos) {
    auto parties = parse_letter_run(text, n_parties);
    if (parties.empty()) throw ParseError("parse_subset: empty subset");
    PartySubset r(std::move(parties));
    if (r.size() >= n_parties) throw ParseError("parse_subset: subset must be a proper subset");
    return r;
  }
  PartySubset left(parse_letter_run(text.substr(0, bar), n_parties));
  PartySubset right(parse_letter_run(text.substr(bar + 1), n_parties));
  if (left.empty() || right.empty()) throw ParseError("parse_subset: both sides of '|' must be nonempty");
  if (left.size() + right.size() != n_parties || !(left.complement(n_parties) == right))
    throw ParseError("parse_subset: '" + text + "' is not a bipartition of " + std::to_string(n_parties) + " parties");
  return left;
}

PartitionFamily parse_family(const std::string& text, int n_parties) {
  std::vector<PartySubset> subsets;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    PartySubset r = parse_subset(item, n_parties);
    if (std::find(subsets.begin(), subsets.end(), r) != subsets.end())
      throw ParseError("parse_family: duplicate subset '" + item + "'");
    subsets.push_back(std::move(r));
  }
  if (subsets.empty()) throw ParseError("parse_family: no subsets in '" + text + "'");
  return PartitionFamily(std::move(subsets));
}

std::string subset_letters(const PartySubset& r) {
  std::string s;
  for (int p : r.members) s += static_cast<char>('A' + p - 1);
  return s;
}

std::string subset_to_string(const PartySubset& r, int n_parties) {
  return subset_letters(r) + "|" + subset_letters(r.complement(n_parties));
}

std::string family_to_string(const PartitionFamily& family, int n_parties) {
  std::string s;
  for (int i = 0; i < family.size(); ++i) {
    if (i) s += ",";
    s += subset_to_string(family.subsets[i], n_parties);
  }
  return s;
}

}  // namespace evec
