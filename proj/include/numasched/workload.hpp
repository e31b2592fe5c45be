#pragma once

#include <cstdint>
#include <vector>

#include "numasched/core_model.hpp"

namespace numasched {

/// Observed counts for one scheduling quantum.
struct QuantumCounts {
  C2CMatrix c2c;
  DramMatrix dram;

  bool operator==(const QuantumCounts&) const = default;
};

struct Trace {
  SystemConfig config;
  std::vector<QuantumCounts> quanta;

  /// Throws InvalidArgument if dimensions or matrix invariants are broken.
  void validate() const;

  bool operator==(const Trace&) const = default;
};

/// Phase-structured synthetic workload. Each phase plants one grouping whose
/// members share heavily, and one home node per planted group.
struct WorkloadSpec {
  SystemConfig config;
  std::size_t phases = 1;
  Count c2c_intra = 5000;
  Count c2c_inter = 50;
  Count dram_home = 10000;
  Count dram_other = 6000;
  std::uint64_t seed = 0;
  // Multiplicative noise, +/- this percentage per count; 0 disables it.
  double jitter_pct = 0.0;

  void validate() const;
};

/// Workload names synth1, synth2 and synth3 map to phase counts 1, 2 and 4.
WorkloadSpec workload_preset(std::size_t phases, const SystemConfig& config);

/// 0-based phase of 1-based quantum q.
std::size_t phase_of_quantum(std::size_t q, const WorkloadSpec& spec);

/// Planted pattern for a phase. The partition is the identity layout rotated
/// by phase+1 thread ids, so group g = {(g*K + m + phase + 1) mod N}, and
/// group g's home is node (g + phase + 2) mod L. Phase 0 never coincides
/// with the identity schedule; phase K-1 (shift by K) lands back on it.
Schedule planted_grouping(std::size_t phase, const SystemConfig& config);

QuantumCounts synth_quantum(std::size_t q, const WorkloadSpec& spec);

Trace gen_trace(const WorkloadSpec& spec);

}  // namespace numasched
