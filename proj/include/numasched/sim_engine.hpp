#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "numasched/core_model.hpp"
#include "numasched/cost_model.hpp"
#include "numasched/workload.hpp"

namespace numasched {

enum class C2CAlgorithm { kNone, kMaxPartner, kSortedPairs };
enum class DramAlgorithm { kNone, kGlobalGreedy, kPerNodeGreedy };

struct Policy {
  C2CAlgorithm c2c = C2CAlgorithm::kNone;
  DramAlgorithm dram = DramAlgorithm::kNone;
  // Charge the cache-affinity penalty for every thread that changes node.
  bool affinity = false;

  /// Parses "none", "c2c1", "c2c2", "dram1", "dram2" or a '+'-joined
  /// combination such as "c2c2+dram2". Affinity is set separately.
  static Policy parse(std::string_view text, bool affinity = false);
  /// Algorithm part only, e.g. "c2c1+dram2" or "none".
  std::string name() const;

  bool operator==(const Policy&) const = default;
};

struct SimResult {
  std::vector<CostBreakdown> per_quantum;
  std::vector<Cycles> baseline_per_quantum;
  std::vector<Schedule> schedules;
  std::vector<std::size_t> migrations;
  Cycles baseline_total = 0;
  Cycles optimized_total = 0;
  double improvement = 0.0;
};

/// Runs `policy` over the trace. Quantum 1 uses the identity schedule; the
/// schedule for quantum q+1 is computed from the counts observed in quantum
/// q only. The baseline keeps the identity schedule throughout and never
/// migrates.
SimResult simulate(const Trace& trace, const Policy& policy, const LatencyConfig& lat);

/// Next schedule given the current one and one quantum's observed counts.
Schedule next_schedule(const Schedule& current, const QuantumCounts& observed,
                       const Policy& policy, const SystemConfig& config);

struct SweepCell {
  Policy policy;
  LatencyConfig lat;
  SimResult result;
};

/// Evaluates every (policy, latency point) pair independently, in
/// policy-major order. Up to `max_threads` cells run concurrently; results do
/// not depend on the thread count. 0 means hardware concurrency.
std::vector<SweepCell> sweep(const Trace& trace, const std::vector<Policy>& policies,
                             const std::vector<LatencyConfig>& lat_points,
                             std::size_t max_threads = 0);

}  // namespace numasched
