#pragma once

#include <span>

#include "numasched/core_model.hpp"

namespace numasched {

/// Cycle cost of one quantum, split by source.
struct CostBreakdown {
  Cycles c2c_local = 0;
  Cycles c2c_remote = 0;
  Cycles dram_local = 0;
  Cycles dram_remote = 0;
  Cycles migration = 0;
  Cycles total = 0;

  bool operator==(const CostBreakdown&) const = default;
};

/// Additive latency model: every transfer and access pays the local or remote
/// latency depending on placement, and each migrated thread forfeits its
/// cached working set (affinity_lines * affinity_line_latency).
CostBreakdown quantum_cost(const Schedule& sched, const C2CMatrix& c2c, const DramMatrix& dram,
                           const LatencyConfig& lat, std::span<const ThreadId> migrated);

/// c2c component only, for a placement given as node-per-thread.
Cycles c2c_cost(std::span<const NodeId> node_of_thread, const C2CMatrix& c2c,
                const LatencyConfig& lat);

/// DRAM component only, for a placement given as node-per-thread.
Cycles dram_cost(std::span<const NodeId> node_of_thread, const DramMatrix& dram,
                 const LatencyConfig& lat);

/// 100 * (baseline - optimized) / baseline. Negative values mean a regression.
/// Throws InvalidArgument for a zero baseline.
double improvement_pct(Cycles baseline_total, Cycles optimized_total);

}  // namespace numasched
