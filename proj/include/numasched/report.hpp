#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "numasched/oracle.hpp"
#include "numasched/sim_engine.hpp"

namespace numasched {

/// Fixed two-decimal rendering ("16.79"); never prints "-0.00".
std::string format_pct(double pct);

/// quantum,c2c_local,c2c_remote,dram_local,dram_remote,migration,total,baseline,migrated,placement
/// Quanta are 1-based; placement lists each thread's node separated by spaces.
void write_quantum_csv(std::ostream& out, const SimResult& result);

std::string summary_line(std::string_view workload, const Policy& policy, const LatencyConfig& lat,
                         const SimResult& result);

struct SweepRow {
  std::string workload;
  Policy policy;
  LatencyConfig lat;
  Cycles baseline_total = 0;
  Cycles optimized_total = 0;
  double improvement = 0.0;
};

inline constexpr std::string_view kSweepHeader =
    "workload,policy,affinity,c2c_remote,dram_remote,baseline_total,optimized_total,improvement";

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// quantum,algorithm,heuristic_cost,oracle_cost,gap_pct,status, then a
/// closing "misses=<n>" line.
void write_oracle_report(std::ostream& out, const std::vector<OracleCheck>& checks);

}  // namespace numasched
