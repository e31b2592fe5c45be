#include <doctest.h>

#include <numeric>
#include <random>

#include "numasched/c2c_opt.hpp"
#include "numasched/errors.hpp"
#include "numasched/oracle.hpp"
#include "test_support.hpp"

using namespace numasched;
using namespace numasched::testing;

namespace {

using Groups = std::vector<std::vector<ThreadId>>;

C2CMatrix ones_with(std::size_t n, std::initializer_list<std::tuple<ThreadId, ThreadId, Count>> pairs) {
  C2CMatrix m(n);
  for (ThreadId i = 0; i < n; ++i) {
    for (ThreadId j = i + 1; j < n; ++j) m.set_pair(i, j, 1);
  }
  for (auto [i, j, c] : pairs) m.set_pair(i, j, c);
  return m;
}

const Grouping kStridePlanted{{{0, 4, 8, 12}, {1, 5, 9, 13}, {2, 6, 10, 14}, {3, 7, 11, 15}}};

}  // namespace

TEST_CASE("sorted_pairs orders by count then (lo, hi)") {
  const C2CMatrix m = C2CMatrix::from_rows({{0, 5, 7, 5}, {5, 0, 1, 0}, {7, 1, 0, 5}, {5, 0, 5, 0}});
  const auto pairs = sorted_pairs(m, {0, 1, 2, 3});
  const std::vector<PairEntry> expected{{0, 2, 7}, {0, 1, 5}, {0, 3, 5}, {2, 3, 5}, {1, 2, 1}, {1, 3, 0}};
  CHECK(pairs == expected);
}

TEST_CASE("group_by_max_partner examples") {
  const SystemConfig cfg = SystemConfig::make(2, 4, 1);

  SUBCASE("all-zero matrix gives the identity grouping") {
    CHECK(group_by_max_partner(C2CMatrix(8), cfg).groups == Groups{{0, 1, 2, 3}, {4, 5, 6, 7}});
  }
  SUBCASE("hand-traced 8-thread example") {
    const C2CMatrix m = ones_with(8, {{0, 1, 100}, {0, 2, 90}, {0, 3, 80}, {4, 5, 95}});
    const Grouping g = group_by_max_partner(m, cfg);
    CHECK(g.groups == Groups{{0, 1, 2, 3}, {4, 5, 6, 7}});
    // The brute-force optimum over all 35 partitions agrees.
    CHECK(best_grouping_bruteforce(m, cfg, LatencyConfig{}).grouping.same_partition(g));
  }
  SUBCASE("planted stride blocks at N=16") {
    const SystemConfig big = SystemConfig::make(4, 4, 1);
    const C2CMatrix m = block_c2c(kStridePlanted, 16, 1000, 10);
    const Grouping g = group_by_max_partner(m, big);
    CHECK(g.same_partition(kStridePlanted));
    CHECK(best_grouping_bruteforce(m, big, LatencyConfig{}).grouping.same_partition(g));
  }
}

TEST_CASE("group_by_sorted_pairs examples") {
  const SystemConfig cfg = SystemConfig::make(2, 4, 1);

  SUBCASE("all-zero matrix gives the identity grouping") {
    CHECK(group_by_sorted_pairs(C2CMatrix(8), cfg).groups == Groups{{0, 1, 2, 3}, {4, 5, 6, 7}});
  }
  SUBCASE("overlap repair: (0,1) then (0,2) brings in 2 and its best partner 3") {
    const C2CMatrix m = ones_with(8, {{0, 1, 100}, {0, 2, 90}, {2, 3, 70}});
    const Grouping g = group_by_sorted_pairs(m, cfg);
    CHECK(g.groups == Groups{{0, 1, 2, 3}, {4, 5, 6, 7}});
    CHECK(best_grouping_bruteforce(m, cfg, LatencyConfig{}).grouping.same_partition(g));
  }
  SUBCASE("disjoint second pair joins whole, even when suboptimal") {
    // (0,1)=100 then (4,5)=95 is disjoint, so the group is {0,1,4,5}; the
    // max-partner grouping finds the better {0,1,2,3}.
    const C2CMatrix m = ones_with(8, {{0, 1, 100}, {0, 2, 90}, {0, 3, 80}, {4, 5, 95}});
    CHECK(group_by_sorted_pairs(m, cfg).groups == Groups{{0, 1, 4, 5}, {2, 3, 6, 7}});
  }
  SUBCASE("planted stride blocks at N=16") {
    const SystemConfig big = SystemConfig::make(4, 4, 1);
    const C2CMatrix m = block_c2c(kStridePlanted, 16, 1000, 10);
    CHECK(group_by_sorted_pairs(m, big).same_partition(kStridePlanted));
  }
}

TEST_CASE("grouping errors") {
  CHECK_THROWS_AS(group_by_max_partner(C2CMatrix(4), SystemConfig::make(4, 1, 1)), InvalidArgument);
  CHECK_THROWS_AS(group_by_sorted_pairs(C2CMatrix(9), SystemConfig::make(3, 3, 1)), UnsupportedConfig);
  CHECK_THROWS_AS(group_by_max_partner(C2CMatrix(6), SystemConfig::make(2, 4, 1)), InvalidArgument);
  CHECK_THROWS_AS(group_by_sorted_pairs(C2CMatrix(6), SystemConfig::make(2, 4, 1)), InvalidArgument);
}

TEST_CASE("sorted-pairs grouping generalizes to other even K") {
  std::mt19937_64 rng(11);
  for (auto [l, k] : {std::pair<std::size_t, std::size_t>{4, 2}, {2, 6}, {3, 4}, {2, 8}}) {
    const SystemConfig cfg = SystemConfig::make(l, k, 1);
    for (int trial = 0; trial < 20; ++trial) {
      const Grouping g = group_by_sorted_pairs(random_c2c(cfg.n_threads, rng), cfg);
      CHECK(validate_schedule({g, NodeAssignment::identity(l)}, cfg).empty());
    }
  }
  // K = 2: every group is the heaviest remaining pair.
  const C2CMatrix m = C2CMatrix::from_rows({{0, 9, 1, 2}, {9, 0, 3, 4}, {1, 3, 0, 5}, {2, 4, 5, 0}});
  CHECK(group_by_sorted_pairs(m, SystemConfig::make(2, 2, 1)).groups == Groups{{0, 1}, {2, 3}});
}

TEST_CASE("degenerate tail fills in id order") {
  // Only pair (5, 6) is non-zero; after its group forms, nothing discriminates.
  C2CMatrix m(8);
  m.set_pair(5, 6, 3);
  const Grouping g = group_by_sorted_pairs(m, SystemConfig::make(2, 4, 1));
  CHECK(g.groups == Groups{{0, 1, 5, 6}, {2, 3, 4, 7}});
}

TEST_CASE("grouping properties on random matrices") {
  std::mt19937_64 rng(2024);
  const SystemConfig cfg = SystemConfig::make(4, 4, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const C2CMatrix m = random_c2c(16, rng, trial % 2 ? 5 : 1000);  // small ranges force ties
    const Grouping g1 = group_by_max_partner(m, cfg);
    const Grouping g2 = group_by_sorted_pairs(m, cfg);
    CHECK(validate_schedule({g1, NodeAssignment::identity(4)}, cfg).empty());
    CHECK(validate_schedule({g2, NodeAssignment::identity(4)}, cfg).empty());
    CHECK(group_by_max_partner(m, cfg) == g1);
    CHECK(group_by_sorted_pairs(m, cfg) == g2);

    // The heaviest pair overall lands in the first emitted group.
    std::vector<ThreadId> all(16);
    std::iota(all.begin(), all.end(), ThreadId{0});
    const PairEntry top = sorted_pairs(m, all).front();
    const auto& first = g2.groups.front();
    CHECK(std::count(first.begin(), first.end(), top.lo) == 1);
    CHECK(std::count(first.begin(), first.end(), top.hi) == 1);

    // The first max-partner group contains a thread whose Max_i is the global maximum.
    const Count global_max = top.count;
    bool seeded = false;
    for (ThreadId t : g1.groups.front()) {
      Count mx = 0;
      for (ThreadId j = 0; j < 16; ++j) {
        if (j != t) mx = std::max(mx, m(t, j));
      }
      seeded |= mx == global_max;
    }
    CHECK(seeded);
  }
}

TEST_CASE("planted blocks with random counts are recovered") {
  std::mt19937_64 rng(99);
  const SystemConfig cfg = SystemConfig::make(4, 4, 1);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<ThreadId> perm(16);
    std::iota(perm.begin(), perm.end(), ThreadId{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    const Grouping planted = relabel(identity_schedule(cfg).grouping, perm);

    // Every intra count (>= 1000) strictly exceeds every inter count (< 1000).
    std::uniform_int_distribution<Count> hi(1000, 2000), lo(0, 999);
    std::vector<std::size_t> group_of(16);
    for (std::size_t g = 0; g < 4; ++g) {
      for (ThreadId t : planted.groups[g]) group_of[t] = g;
    }
    C2CMatrix m(16);
    for (ThreadId i = 0; i < 16; ++i) {
      for (ThreadId j = i + 1; j < 16; ++j) m.set_pair(i, j, group_of[i] == group_of[j] ? hi(rng) : lo(rng));
    }
    CHECK(group_by_max_partner(m, cfg).same_partition(planted));

    // Sorted pairs joins a disjoint heavy pair whole, so uneven intra counts
    // can merge two planted blocks. Uniform intra counts cannot.
    C2CMatrix flat(16);
    for (ThreadId i = 0; i < 16; ++i) {
      for (ThreadId j = i + 1; j < 16; ++j) flat.set_pair(i, j, group_of[i] == group_of[j] ? 1000 : lo(rng));
    }
    CHECK(group_by_sorted_pairs(flat, cfg).same_partition(planted));
  }
}

TEST_CASE("permutation equivariance on tie-free inputs") {
  std::mt19937_64 rng(5);
  const SystemConfig cfg = SystemConfig::make(4, 4, 1);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<ThreadId> perm(16);
    std::iota(perm.begin(), perm.end(), ThreadId{0});
    std::shuffle(perm.begin(), perm.end(), rng);

    // Distinct counts make every comparison in the sorted-pairs grouping strict.
    const C2CMatrix m = distinct_c2c(16, rng);
    CHECK(group_by_sorted_pairs(relabel(m, perm), cfg)
              .same_partition(relabel(group_by_sorted_pairs(m, cfg), perm)));
  }
  // Max-partner always ties the two endpoints of the heaviest pair, so check
  // it where either seed yields the same group: distinct counts on planted blocks.
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<ThreadId> perm(16);
    std::iota(perm.begin(), perm.end(), ThreadId{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    C2CMatrix m = distinct_c2c(16, rng);
    const Grouping planted = identity_schedule(cfg).grouping;
    for (const auto& g : planted.groups) {
      for (std::size_t a = 0; a < g.size(); ++a) {
        for (std::size_t b = a + 1; b < g.size(); ++b) m.set_pair(g[a], g[b], m(g[a], g[b]) + 100000);
      }
    }
    CHECK(group_by_max_partner(relabel(m, perm), cfg)
              .same_partition(relabel(group_by_max_partner(m, cfg), perm)));
  }
}
