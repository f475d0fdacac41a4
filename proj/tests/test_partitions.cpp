#include <doctest.h>

#include <set>

#include "evec/partitions.hpp"

using namespace evec;

namespace {

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Closed form for |G_m|.
std::int64_t depth_family_size_formula(int n, int m) {
  std::int64_t size = 0;
  if (n % 2 == 0) {
    size = binomial(n, n / 2) / 2;
    for (int i = 1; i <= m; ++i) size += binomial(n, n / 2 + i);
  } else {
    for (int i = 0; i <= m; ++i) size += binomial(n, (n + 1) / 2 + i);
  }
  return size;
}

// Independent count: bipartitions (canonical side contains party 1) with a
// side of size in [ceil(n/2), ceil(n/2) + m], by bitmask enumeration.
std::int64_t depth_family_size_enumerated(int n, int m) {
  const int h0 = (n + 1) / 2;
  std::int64_t count = 0;
  for (int mask = 1; mask < (1 << n) - 1; ++mask) {
    if (!(mask & 1)) continue;  // canonical side contains party 1
    const int s = __builtin_popcount(static_cast<unsigned>(mask));
    const bool qualifies = (s >= h0 && s <= h0 + m) || (n - s >= h0 && n - s <= h0 + m);
    if (qualifies) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("all_bipartitions enumerates canonical representatives") {
  const PartitionFamily f3 = all_bipartitions(3);
  CHECK(f3.size() == 3);
  std::set<PartySubset> got(f3.subsets.begin(), f3.subsets.end());
  CHECK(got.count(PartySubset{1}) == 1);
  CHECK(got.count(PartySubset{1, 2}) == 1);
  CHECK(got.count(PartySubset{1, 3}) == 1);

  CHECK(all_bipartitions(2).size() == 1);
  CHECK(all_bipartitions(5).size() == 15);
  CHECK_THROWS_AS(all_bipartitions(1), InvariantViolation);
}

TEST_CASE("subsets_of_size keeps literal subsets") {
  CHECK(subsets_of_size(5, 3).size() == 10);
  CHECK(subsets_of_size(4, 2).size() == 6);
  const PartitionFamily singles = subsets_of_size(3, 1);
  REQUIRE(singles.size() == 3);
  CHECK(singles.subsets[0] == PartySubset{1});
  CHECK(singles.subsets[1] == PartySubset{2});
  CHECK(singles.subsets[2] == PartySubset{3});
  CHECK_THROWS_AS(subsets_of_size(3, 3), InvariantViolation);
  CHECK_THROWS_AS(subsets_of_size(3, 0), InvariantViolation);
}

TEST_CASE("gamma closed form and identities") {
  CHECK(gamma(5, 1) == 15);
  CHECK(gamma(5, 4) == 1);
  for (int n = 2; n <= 10; ++n) {
    CHECK(gamma(n, 1) == all_bipartitions(n).size());
    CHECK(gamma(n, n - 1) == 1);
  }
  CHECK_THROWS_AS(gamma(5, 0), InvariantViolation);
  CHECK_THROWS_AS(gamma(5, 5), InvariantViolation);
}

TEST_CASE("depth_family sizes match the closed form and an independent count") {
  CHECK(depth_family(5, 0).size() == 10);
  CHECK(depth_family(5, 1).size() == 15);
  CHECK(depth_family(4, 0).size() == 3);
  for (int n = 2; n <= 8; ++n) {
    for (int m = 0; m <= n / 2 - 1; ++m) {
      const PartitionFamily g = depth_family(n, m);
      CHECK(g.size() == depth_family_size_formula(n, m));
      CHECK(g.size() == depth_family_size_enumerated(n, m));
      // No duplicate bipartitions after canonicalization.
      std::set<PartySubset> unique_subsets;
      for (const auto& r : g.subsets) unique_subsets.insert(r.canonical(n));
      CHECK(static_cast<int>(unique_subsets.size()) == g.size());
    }
  }
  CHECK_THROWS_AS(depth_family(5, 2), InvariantViolation);
  CHECK_THROWS_AS(depth_family(5, -1), InvariantViolation);
}

TEST_CASE("swap_pair exchanges digits on the subset") {
  const MultiIndex zero{0, 0, 0}, one{1, 1, 1};
  auto [a, b] = swap_pair(zero, one, PartySubset{1});
  CHECK(a == MultiIndex{1, 0, 0});
  CHECK(b == MultiIndex{0, 1, 1});

  auto [c, d] = swap_pair(zero, one, PartySubset{1, 2});
  CHECK(c == MultiIndex{1, 1, 0});
  CHECK(d == MultiIndex{0, 0, 1});

  auto [e, f] = swap_pair(MultiIndex{0, 1, 2}, MultiIndex{2, 0, 1}, PartySubset{1, 2, 3});
  CHECK(e == MultiIndex{2, 0, 1});
  CHECK(f == MultiIndex{0, 1, 2});

  CHECK_THROWS_AS(swap_pair(MultiIndex{0, 1}, one, PartySubset{1}), InvariantViolation);
}

TEST_CASE("swap_pair is an involution preserving per-position digit multisets") {
  const MultiIndex eta{0, 2, 1, 0};
  const MultiIndex eta_prime{1, 0, 2, 2};
  for (const PartySubset& r :
       {PartySubset{1}, PartySubset{2, 4}, PartySubset{1, 3}, PartySubset{1, 2, 3, 4}}) {
    auto [a, b] = swap_pair(eta, eta_prime, r);
    auto [back_a, back_b] = swap_pair(a, b, r);
    CHECK(back_a == eta);
    CHECK(back_b == eta_prime);
    for (std::size_t i = 0; i < eta.size(); ++i) {
      const std::multiset<int> before{eta[i], eta_prime[i]};
      const std::multiset<int> after{a[i], b[i]};
      CHECK(before == after);
    }
  }
}

TEST_CASE("subset text syntax") {
  CHECK(parse_subset("A|BC", 3) == PartySubset{1});
  CHECK(parse_subset("a|bc", 3) == PartySubset{1});
  CHECK(parse_subset("AB", 3) == PartySubset{1, 2});
  CHECK(parse_subset("B|AC", 3) == PartySubset{2});
  CHECK_THROWS_AS(parse_subset("X|BC", 3), ParseError);
  CHECK_THROWS_AS(parse_subset("D", 3), ParseError);
  CHECK_THROWS_AS(parse_subset("A|B", 3), ParseError);    // C unaccounted for
  CHECK_THROWS_AS(parse_subset("ABC", 3), ParseError);    // not a proper subset
  CHECK_THROWS_AS(parse_subset("", 3), ParseError);

  const PartitionFamily family = parse_family("A|BC,B|AC", 3);
  REQUIRE(family.size() == 2);
  CHECK(family.subsets[0] == PartySubset{1});
  CHECK(family.subsets[1] == PartySubset{2});
  CHECK_THROWS_AS(parse_family("A|BC,A|BC", 3), ParseError);

  CHECK(subset_to_string(PartySubset{2}, 3) == "B|AC");
  CHECK(family_to_string(parse_family("A|BC,AB", 3), 3) == "A|BC,AB|C");
}
