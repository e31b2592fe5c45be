#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "numasched/core_model.hpp"
#include "numasched/errors.hpp"

using namespace numasched;

namespace {

bool has_violation(const std::vector<std::string>& v, const std::string& needle) {
  return std::any_of(v.begin(), v.end(), [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("SystemConfig enforces one thread per core") {
  CHECK_NOTHROW(SystemConfig::make(4, 4, 16));
  CHECK_THROWS_AS(SystemConfig::make(1, 1, 1), InvalidArgument);  // N < 2
  CHECK_THROWS_AS(SystemConfig::make(2, 2, 0), InvalidArgument);

  SystemConfig unbalanced{15, 4, 4, 16};
  CHECK_FALSE(unbalanced.violations().empty());
}

TEST_CASE("LatencyConfig defaults and migration penalty") {
  LatencyConfig lat;
  CHECK(lat.c2c_local == 50);
  CHECK(lat.c2c_remote == 100);
  CHECK(lat.dram_local == 125);
  CHECK(lat.dram_remote == 250);
  CHECK(lat.migration_penalty() == 256000);

  lat.c2c_remote = 10;
  CHECK_THROWS_AS(lat.validate(), InvalidArgument);
}

TEST_CASE("identity_schedule") {
  SUBCASE("N=8 L=2 K=4") {
    const Schedule s = identity_schedule(SystemConfig::make(2, 4, 1));
    CHECK(s.grouping.groups == std::vector<std::vector<ThreadId>>{{0, 1, 2, 3}, {4, 5, 6, 7}});
    CHECK(s.assignment.node_of_group == std::vector<NodeId>{0, 1});
  }
  SUBCASE("N=2 L=2 K=1") {
    const Schedule s = identity_schedule(SystemConfig::make(2, 1, 1));
    CHECK(s.grouping.groups == std::vector<std::vector<ThreadId>>{{0}, {1}});
    CHECK(s.assignment.node_of_group == std::vector<NodeId>{0, 1});
  }
  SUBCASE("N=16 L=4 K=4") {
    const Schedule s = identity_schedule(SystemConfig::make(4, 4, 16));
    REQUIRE(s.grouping.groups.size() == 4);
    for (std::size_t g = 0; g < 4; ++g) {
      CHECK(s.grouping.groups[g] == std::vector<ThreadId>{4 * g, 4 * g + 1, 4 * g + 2, 4 * g + 3});
      CHECK(s.assignment.node_of_group[g] == g);
    }
  }
}

TEST_CASE("validate_schedule reports violations") {
  const SystemConfig cfg = SystemConfig::make(4, 4, 16);
  CHECK(validate_schedule(identity_schedule(cfg), cfg).empty());

  Schedule dup = identity_schedule(cfg);
  dup.grouping.groups[1][0] = 0;  // thread 0 in two groups, thread 4 nowhere
  const auto v = validate_schedule(dup, cfg);
  CHECK(has_violation(v, "duplicate thread"));
  CHECK(has_violation(v, "missing"));

  Schedule bad_nodes = identity_schedule(cfg);
  bad_nodes.assignment.node_of_group = {0, 0, 1, 2};
  CHECK(has_violation(validate_schedule(bad_nodes, cfg), "assignment not bijective"));

  Schedule short_group = identity_schedule(cfg);
  short_group.grouping.groups[3].pop_back();
  CHECK(has_violation(validate_schedule(short_group, cfg), "group size"));
}

TEST_CASE("migrated_threads examples") {
  const SystemConfig cfg = SystemConfig::make(4, 4, 16);
  const Schedule s = identity_schedule(cfg);
  CHECK(migrated_threads(s, s).empty());

  SUBCASE("swapping node labels of groups 0 and 1 moves their 8 threads") {
    Schedule swapped = s;
    std::swap(swapped.assignment.node_of_group[0], swapped.assignment.node_of_group[1]);
    CHECK(migrated_threads(s, swapped) == std::vector<ThreadId>{0, 1, 2, 3, 4, 5, 6, 7});
  }
  SUBCASE("exchanging thread 0 and thread 4") {
    Schedule exchanged = s;
    std::swap(exchanged.grouping.groups[0][0], exchanged.grouping.groups[1][0]);
    CHECK(migrated_threads(s, exchanged) == std::vector<ThreadId>{0, 4});
  }
  SUBCASE("config mismatch") {
    CHECK_THROWS_AS(migrated_threads(s, identity_schedule(SystemConfig::make(2, 4, 1))), InvalidArgument);
  }
}

TEST_CASE("migrated_threads properties over random schedules") {
  std::mt19937_64 rng(7);
  const SystemConfig cfg = SystemConfig::make(4, 4, 16);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<ThreadId> threads(cfg.n_threads);
    std::iota(threads.begin(), threads.end(), ThreadId{0});
    auto random_schedule = [&] {
      std::shuffle(threads.begin(), threads.end(), rng);
      Schedule s;
      for (std::size_t g = 0; g < cfg.n_nodes; ++g) {
        s.grouping.groups.emplace_back(threads.begin() + static_cast<long>(g * 4),
                                       threads.begin() + static_cast<long>(g * 4 + 4));
      }
      s.assignment = NodeAssignment::identity(cfg.n_nodes);
      std::shuffle(s.assignment.node_of_group.begin(), s.assignment.node_of_group.end(), rng);
      return s;
    };
    const Schedule a = random_schedule();
    const Schedule b = random_schedule();
    REQUIRE(validate_schedule(a, cfg).empty());
    CHECK(migrated_threads(a, a).empty());
    CHECK(migrated_threads(a, b) == migrated_threads(b, a));

    // Relabel groups (permute group order and node list together).
    Schedule relabeled = a;
    std::vector<std::size_t> order{0, 1, 2, 3};
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t g = 0; g < 4; ++g) {
      relabeled.grouping.groups[g] = a.grouping.groups[order[g]];
      relabeled.assignment.node_of_group[g] = a.assignment.node_of_group[order[g]];
    }
    CHECK(migrated_threads(a, relabeled).empty());
    CHECK(a.same_placement(relabeled));
  }
}

TEST_CASE("C2CMatrix invariants are enforced on construction") {
  CHECK_NOTHROW(C2CMatrix::from_rows({{0, 3}, {3, 0}}));
  CHECK_THROWS_AS(C2CMatrix::from_rows({{0, 3}, {2, 0}}), InvalidArgument);
  CHECK_THROWS_AS(C2CMatrix::from_rows({{1, 3}, {3, 0}}), InvalidArgument);
  CHECK_THROWS_AS(C2CMatrix::from_rows({{0, 3, 1}, {3, 0}}), InvalidArgument);

  C2CMatrix m(3);
  m.set_pair(0, 2, 9);
  CHECK(m(2, 0) == 9);
  CHECK_THROWS_AS(m.set_pair(1, 1, 4), InvalidArgument);
}

TEST_CASE("Grouping canonical form ignores order") {
  const Grouping a{{{5, 4, 6, 7}, {3, 2, 1, 0}}};
  const Grouping b{{{0, 1, 2, 3}, {4, 5, 6, 7}}};
  CHECK(a.same_partition(b));
  CHECK(a.canonical() == b);
  CHECK_FALSE(Grouping{{{0, 1, 2, 4}, {3, 5, 6, 7}}}.same_partition(b));
}
