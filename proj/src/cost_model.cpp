#include "numasched/cost_model.hpp"

#include <cstdint>

#include "numasched/errors.hpp"

namespace numasched {

namespace {

struct Split {
  Cycles local = 0;
  Cycles remote = 0;
};

Split c2c_split(std::span<const NodeId> node_of, const C2CMatrix& c2c, const LatencyConfig& lat) {
  if (c2c.size() != node_of.size()) throw InvalidArgument("c2c matrix size does not match schedule");
  Split s;
  for (ThreadId i = 0; i < node_of.size(); ++i) {
    for (ThreadId j = i + 1; j < node_of.size(); ++j) {
      if (node_of[i] == node_of[j]) {
        s.local += c2c(i, j) * lat.c2c_local;
      } else {
        s.remote += c2c(i, j) * lat.c2c_remote;
      }
    }
  }
  return s;
}

Split dram_split(std::span<const NodeId> node_of, const DramMatrix& dram, const LatencyConfig& lat) {
  if (dram.threads() != node_of.size()) throw InvalidArgument("DRAM matrix rows do not match schedule");
  Split s;
  for (ThreadId t = 0; t < node_of.size(); ++t) {
    for (NodeId n = 0; n < dram.nodes(); ++n) {
      if (node_of[t] == n) {
        s.local += dram(t, n) * lat.dram_local;
      } else {
        s.remote += dram(t, n) * lat.dram_remote;
      }
    }
  }
  return s;
}

}  // namespace

Cycles c2c_cost(std::span<const NodeId> node_of_thread, const C2CMatrix& c2c,
                const LatencyConfig& lat) {
  const Split s = c2c_split(node_of_thread, c2c, lat);
  return s.local + s.remote;
}

Cycles dram_cost(std::span<const NodeId> node_of_thread, const DramMatrix& dram,
                 const LatencyConfig& lat) {
  const Split s = dram_split(node_of_thread, dram, lat);
  return s.local + s.remote;
}

CostBreakdown quantum_cost(const Schedule& sched, const C2CMatrix& c2c, const DramMatrix& dram,
                           const LatencyConfig& lat, std::span<const ThreadId> migrated) {
  if (sched.assignment.node_of_group.size() != dram.nodes()) {
    throw InvalidArgument("DRAM matrix node count does not match schedule");
  }
  const auto node_of = sched.node_of_threads();
  const Split c = c2c_split(node_of, c2c, lat);
  const Split d = dram_split(node_of, dram, lat);

  CostBreakdown out;
  out.c2c_local = c.local;
  out.c2c_remote = c.remote;
  out.dram_local = d.local;
  out.dram_remote = d.remote;
  out.migration = static_cast<Cycles>(migrated.size()) * lat.migration_penalty();
  out.total = out.c2c_local + out.c2c_remote + out.dram_local + out.dram_remote + out.migration;
  return out;
}

double improvement_pct(Cycles baseline_total, Cycles optimized_total) {
  if (baseline_total == 0) throw InvalidArgument("improvement is undefined for a zero baseline");
  // Modular subtraction then a signed view keeps the difference exact.
  const auto saved = static_cast<std::int64_t>(baseline_total - optimized_total);
  return 100.0 * static_cast<double>(saved) / static_cast<double>(baseline_total);
}

}  // namespace numasched
