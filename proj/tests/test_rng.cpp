#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include <decosim/error.hpp>
#include <decosim/rng.hpp>

using decosim::RngStream;
using decosim::derive_stream;

TEST_CASE("equal (seed, stream) pairs replay identical sequences") {
  RngStream a = derive_stream(42, 0);
  RngStream b = derive_stream(42, 0);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
}

TEST_CASE("distinct stream ids diverge immediately") {
  RngStream a = derive_stream(42, 0);
  RngStream b = derive_stream(42, 1);
  CHECK(a.next_u64() != b.next_u64());

  // same id under different masters diverges too
  RngStream c = derive_stream(42, 7);
  RngStream d = derive_stream(43, 7);
  CHECK(c.next_u64() != d.next_u64());
}

TEST_CASE("sequence is pinned (cross-platform replay anchor)") {
  // Frozen from the reference implementation; any platform must reproduce
  // these exact draws for seed 42, stream 7.
  RngStream rng = derive_stream(42, 7);
  const std::vector<std::uint64_t> expected = {
      5011179359446459831ull,
      18060295518009412757ull,
      5575360132257543166ull,
      15601204285194604150ull,
  };
  for (const auto value : expected) {
    CHECK(rng.next_u64() == value);
  }
}

TEST_CASE("next_double stays in [0, 1)") {
  RngStream rng = derive_stream(1, 0);
  for (int i = 0; i < 10000; ++i) {
    const double v = rng.next_double();
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("next_below respects the bound and hits every residue") {
  RngStream rng = derive_stream(5, 3);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 10000; ++i) {
    const auto v = rng.next_below(7);
    CHECK(v < 7);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);
  CHECK(rng.next_below(1) == 0);
  CHECK_THROWS_AS((void)rng.next_below(0), decosim::SimError);
}

TEST_CASE("bernoulli degenerates correctly at p = 0 and p = 1") {
  RngStream rng = derive_stream(9, 9);
  for (int i = 0; i < 1000; ++i) {
    CHECK_FALSE(rng.bernoulli(0.0));
    CHECK(rng.bernoulli(1.0));
  }
}

TEST_CASE("sample_without_replacement returns distinct in-range values") {
  RngStream rng = derive_stream(11, 2);
  for (int round = 0; round < 100; ++round) {
    const auto picks = rng.sample_without_replacement(10, 4);
    REQUIRE(picks.size() == 4);
    std::set<std::uint32_t> unique(picks.begin(), picks.end());
    CHECK(unique.size() == 4);
    for (const auto v : picks) CHECK(v < 10);
  }
  // k == n yields a permutation
  const auto all = rng.sample_without_replacement(6, 6);
  std::set<std::uint32_t> unique(all.begin(), all.end());
  CHECK(unique.size() == 6);
  CHECK_THROWS_AS((void)rng.sample_without_replacement(3, 4), decosim::SimError);
}

TEST_CASE("shuffle is a seed-deterministic permutation") {
  std::vector<int> v1{1, 2, 3, 4, 5, 6, 7, 8};
  std::vector<int> v2 = v1;
  RngStream a = derive_stream(3, 1);
  RngStream b = derive_stream(3, 1);
  a.shuffle(v1);
  b.shuffle(v2);
  CHECK(v1 == v2);
  std::sort(v1.begin(), v1.end());
  CHECK(v1 == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8});
}
