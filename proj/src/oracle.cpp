#include "numasched/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "numasched/c2c_opt.hpp"
#include "numasched/cost_model.hpp"
#include "numasched/errors.hpp"

namespace numasched {

namespace {

// Walks every partition of {0..n-1} into sets of k in lexicographic order of
// the canonical form: each new set starts with the smallest unplaced thread
// and takes its other members in ascending order. `visit` receives the groups
// and the total c2c count of all intra-group pairs.
class PartitionWalker {
 public:
  PartitionWalker(const C2CMatrix& c2c, std::size_t k) : c2c_(c2c), n_(c2c.size()), k_(k) {
    groups_.reserve(n_ / k_);
  }

  template <typename Visit>
  void run(Visit&& visit) {
    next_group(0, 0, visit);
  }

 private:
  template <typename Visit>
  void next_group(std::uint32_t placed, Count intra, Visit& visit) {
    if (groups_.size() == n_ / k_) {
      visit(groups_, intra);
      return;
    }
    ThreadId first = 0;
    while (placed & (1u << first)) ++first;
    groups_.push_back({first});
    fill(placed | (1u << first), first + 1, intra, visit);
    groups_.pop_back();
  }

  template <typename Visit>
  void fill(std::uint32_t placed, ThreadId from, Count intra, Visit& visit) {
    auto& group = groups_.back();
    if (group.size() == k_) {
      next_group(placed, intra, visit);
      return;
    }
    const std::size_t still_needed = k_ - group.size();
    for (ThreadId t = from; t + still_needed <= n_; ++t) {
      if (placed & (1u << t)) continue;
      Count added = 0;
      for (ThreadId m : group) added += c2c_(t, m);
      group.push_back(t);
      fill(placed | (1u << t), t + 1, intra + added, visit);
      group.pop_back();
    }
  }

  const C2CMatrix& c2c_;
  std::size_t n_;
  std::size_t k_;
  std::vector<std::vector<ThreadId>> groups_;
};

Count total_pair_count(const C2CMatrix& c2c) {
  Count total = 0;
  for (ThreadId i = 0; i < c2c.size(); ++i) {
    for (ThreadId j = i + 1; j < c2c.size(); ++j) total += c2c(i, j);
  }
  return total;
}

// c2c cost of a partition from its intra-group count.
Cycles partition_cost(Count total, Count intra, const LatencyConfig& lat) {
  return intra * lat.c2c_local + (total - intra) * lat.c2c_remote;
}

Cycles assignment_cost(const GroupDramMatrix& gd, const std::vector<NodeId>& node_of_group,
                       const LatencyConfig& lat) {
  Cycles cost = 0;
  for (std::size_t g = 0; g < gd.groups(); ++g) {
    for (NodeId n = 0; n < gd.nodes(); ++n) {
      cost += gd(g, n) * (node_of_group[g] == n ? lat.dram_local : lat.dram_remote);
    }
  }
  return cost;
}

void check_grouping_bounds(const C2CMatrix& c2c, const SystemConfig& config, std::size_t limit) {
  config.validate();
  if (c2c.size() != config.n_threads) throw InvalidArgument("c2c matrix size does not match thread count");
  if (config.n_threads > limit) {
    throw BoundsError("exhaustive grouping search supports at most " + std::to_string(limit) +
                      " threads, got " + std::to_string(config.n_threads));
  }
}

}  // namespace

std::size_t partition_count(const SystemConfig& config) {
  // Product over groups of C(remaining - 1, K - 1): the first free thread is
  // forced, the other K-1 members are chosen freely.
  std::size_t count = 1;
  for (std::size_t remaining = config.n_threads; remaining > 0; remaining -= config.cores_per_node) {
    std::size_t choose = 1;
    for (std::size_t i = 1; i < config.cores_per_node; ++i) {
      choose = choose * (remaining - i) / i;
    }
    count *= choose;
  }
  return count;
}

GroupingSearch best_grouping_bruteforce(const C2CMatrix& c2c, const SystemConfig& config,
                                        const LatencyConfig& lat) {
  check_grouping_bounds(c2c, config, kMaxOracleThreads);
  lat.validate();

  const Count total = total_pair_count(c2c);
  GroupingSearch best;
  bool have = false;
  PartitionWalker walker(c2c, config.cores_per_node);
  walker.run([&](const std::vector<std::vector<ThreadId>>& groups, Count intra) {
    ++best.candidates_examined;
    const Cycles cost = partition_cost(total, intra, lat);
    if (!have || cost < best.cost) {
      best.cost = cost;
      best.grouping.groups = groups;
      have = true;
    }
  });
  return best;
}

AssignmentSearch best_assignment_bruteforce(const GroupDramMatrix& gd, const LatencyConfig& lat) {
  if (!gd.square()) throw InvalidArgument("group DRAM matrix must be square");
  if (gd.nodes() > kMaxOracleNodes) {
    throw BoundsError("exhaustive assignment search supports at most " + std::to_string(kMaxOracleNodes) +
                      " nodes, got " + std::to_string(gd.nodes()));
  }
  lat.validate();

  std::vector<NodeId> perm(gd.nodes());
  std::iota(perm.begin(), perm.end(), NodeId{0});
  AssignmentSearch best;
  bool have = false;
  do {
    ++best.candidates_examined;
    const Cycles cost = assignment_cost(gd, perm, lat);
    if (!have || cost < best.cost) {
      best.cost = cost;
      best.assignment.node_of_group = perm;
      have = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

OracleResult best_schedule_bruteforce(const QuantumCounts& counts, const SystemConfig& config,
                                      const LatencyConfig& lat) {
  check_grouping_bounds(counts.c2c, config, kMaxJointOracleThreads);
  if (config.n_nodes > kMaxOracleNodes) throw BoundsError("joint search supports at most 8 nodes");
  if (counts.dram.threads() != config.n_threads || counts.dram.nodes() != config.n_nodes) {
    throw InvalidArgument("DRAM matrix shape does not match config");
  }
  lat.validate();

  const Count total = total_pair_count(counts.c2c);
  OracleResult best;
  bool have = false;
  PartitionWalker walker(counts.c2c, config.cores_per_node);
  walker.run([&](const std::vector<std::vector<ThreadId>>& groups, Count intra) {
    Grouping grouping{groups};
    const GroupDramMatrix gd = aggregate_group_dram(grouping, counts.dram);
    const Cycles c2c_part = partition_cost(total, intra, lat);

    std::vector<NodeId> perm(config.n_nodes);
    std::iota(perm.begin(), perm.end(), NodeId{0});
    do {
      ++best.candidates_examined;
      const Cycles cost = c2c_part + assignment_cost(gd, perm, lat);
      if (!have || cost < best.best_cost) {
        best.best_cost = cost;
        best.best_schedule = Schedule{grouping, NodeAssignment{perm}};
        have = true;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  });
  return best;
}

double OracleCheck::gap_pct() const {
  if (heuristic_cost == oracle_cost) return 0.0;
  if (oracle_cost == 0) return 100.0;
  const auto extra = static_cast<std::int64_t>(heuristic_cost - oracle_cost);
  return 100.0 * static_cast<double>(extra) / static_cast<double>(oracle_cost);
}

std::vector<OracleCheck> verify_trace(const Trace& trace, const LatencyConfig& lat) {
  trace.validate();
  const SystemConfig& cfg = trace.config;
  if (cfg.n_threads > kMaxOracleThreads || cfg.n_nodes > kMaxOracleNodes) {
    throw BoundsError("trace exceeds oracle bounds (at most " + std::to_string(kMaxOracleThreads) +
                      " threads and " + std::to_string(kMaxOracleNodes) + " nodes)");
  }

  std::vector<OracleCheck> checks;
  for (std::size_t q = 0; q < trace.quanta.size(); ++q) {
    const QuantumCounts& counts = trace.quanta[q];
    const GroupingSearch best_grouping = best_grouping_bruteforce(counts.c2c, cfg, lat);

    auto grouping_check = [&](const std::string& name, auto&& algorithm) {
      OracleCheck c{q + 1, name, true, 0, best_grouping.cost};
      try {
        const Schedule s{algorithm(counts.c2c, cfg), NodeAssignment::identity(cfg.n_nodes)};
        c.heuristic_cost = c2c_cost(s.node_of_threads(), counts.c2c, lat);
      } catch (const UnsupportedConfig&) {
        c.supported = false;
      } catch (const InvalidArgument&) {
        // K < 2 for the max-partner grouping.
        c.supported = false;
      }
      checks.push_back(c);
    };
    grouping_check("c2c1", group_by_max_partner);
    grouping_check("c2c2", group_by_sorted_pairs);

    const GroupDramMatrix gd = aggregate_group_dram(best_grouping.grouping, counts.dram);
    const AssignmentSearch best_assignment = best_assignment_bruteforce(gd, lat);
    checks.push_back({q + 1, "dram1", true, assignment_cost(gd, assign_global_greedy(gd).node_of_group, lat),
                      best_assignment.cost});
    checks.push_back({q + 1, "dram2", true, assignment_cost(gd, assign_per_node_greedy(gd).node_of_group, lat),
                      best_assignment.cost});
  }
  return checks;
}

}  // namespace numasched
