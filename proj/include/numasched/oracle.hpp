#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "numasched/core_model.hpp"
#include "numasched/dram_opt.hpp"
#include "numasched/workload.hpp"

namespace numasched {

/// Exhaustive-search bounds.
inline constexpr std::size_t kMaxOracleThreads = 16;
inline constexpr std::size_t kMaxOracleNodes = 8;
inline constexpr std::size_t kMaxJointOracleThreads = 12;

struct GroupingSearch {
  Grouping grouping;  // canonical form
  Cycles cost = 0;    // c2c component
  std::size_t candidates_examined = 0;
};

struct AssignmentSearch {
  NodeAssignment assignment;
  Cycles cost = 0;  // DRAM component
  std::size_t candidates_examined = 0;
};

struct OracleResult {
  Schedule best_schedule;
  Cycles best_cost = 0;
  std::size_t candidates_examined = 0;
};

/// Number of ways to split N threads into L unlabeled sets of K:
/// N! / ((K!)^L * L!).
std::size_t partition_count(const SystemConfig& config);

/// Minimum c2c cost over every partition of the threads into L sets of K.
/// Ties resolve to the lexicographically smallest canonical partition.
/// Throws BoundsError above kMaxOracleThreads threads.
GroupingSearch best_grouping_bruteforce(const C2CMatrix& c2c, const SystemConfig& config,
                                        const LatencyConfig& lat);

/// Minimum DRAM cost over all L! group-to-node bijections; ties resolve to the
/// lexicographically smallest assignment. Throws BoundsError above
/// kMaxOracleNodes nodes.
AssignmentSearch best_assignment_bruteforce(const GroupDramMatrix& gd, const LatencyConfig& lat);

/// Joint c2c + DRAM optimum over full schedules (partitions x bijections).
/// Diagnostic only; limited to kMaxJointOracleThreads threads.
OracleResult best_schedule_bruteforce(const QuantumCounts& counts, const SystemConfig& config,
                                      const LatencyConfig& lat);

/// One heuristic compared with the exhaustive optimum on one quantum.
struct OracleCheck {
  std::size_t quantum = 0;  // 1-based
  std::string algorithm;    // c2c1, c2c2, dram1 or dram2
  bool supported = true;
  Cycles heuristic_cost = 0;
  Cycles oracle_cost = 0;

  /// Percentage by which the heuristic exceeds the optimum (0 when it matches).
  double gap_pct() const;
  bool miss() const { return supported && heuristic_cost != oracle_cost; }
};

/// Compares all four heuristics with the oracle on every quantum. Grouping
/// heuristics are scored on the c2c component; DRAM heuristics are scored on
/// the DRAM component of the oracle's best grouping.
std::vector<OracleCheck> verify_trace(const Trace& trace, const LatencyConfig& lat);

}  // namespace numasched
