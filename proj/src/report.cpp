#include "numasched/report.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

namespace numasched {

std::string format_pct(double pct) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", pct);
  std::string s(buf);
  if (s == "-0.00") s = "0.00";
  return s;
}

void write_quantum_csv(std::ostream& out, const SimResult& result) {
  out << "quantum,c2c_local,c2c_remote,dram_local,dram_remote,migration,total,baseline,migrated,placement\n";
  for (std::size_t q = 0; q < result.per_quantum.size(); ++q) {
    const CostBreakdown& c = result.per_quantum[q];
    out << q + 1 << ',' << c.c2c_local << ',' << c.c2c_remote << ',' << c.dram_local << ','
        << c.dram_remote << ',' << c.migration << ',' << c.total << ',' << result.baseline_per_quantum[q]
        << ',' << result.migrations[q] << ',';
    const auto nodes = result.schedules[q].node_of_threads();
    for (std::size_t t = 0; t < nodes.size(); ++t) {
      if (t) out << ' ';
      out << nodes[t];
    }
    out << '\n';
  }
}

std::string summary_line(std::string_view workload, const Policy& policy, const LatencyConfig& lat,
                         const SimResult& result) {
  std::ostringstream out;
  out << "workload=" << workload << " policy=" << policy.name()
      << " affinity=" << (policy.affinity ? "on" : "off") << " c2c_remote=" << lat.c2c_remote
      << " dram_remote=" << lat.dram_remote << " baseline_total=" << result.baseline_total
      << " optimized_total=" << result.optimized_total << " improvement=" << format_pct(result.improvement);
  return out.str();
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepHeader << '\n';
  for (const SweepRow& r : rows) {
    out << r.workload << ',' << r.policy.name() << ',' << (r.policy.affinity ? "on" : "off") << ','
        << r.lat.c2c_remote << ',' << r.lat.dram_remote << ',' << r.baseline_total << ','
        << r.optimized_total << ',' << format_pct(r.improvement) << '\n';
  }
}

void write_oracle_report(std::ostream& out, const std::vector<OracleCheck>& checks) {
  out << "quantum,algorithm,heuristic_cost,oracle_cost,gap_pct,status\n";
  std::size_t misses = 0;
  for (const OracleCheck& c : checks) {
    out << c.quantum << ',' << c.algorithm << ',';
    if (!c.supported) {
      out << ",," << ",unsupported\n";
      continue;
    }
    out << c.heuristic_cost << ',' << c.oracle_cost << ',' << format_pct(c.gap_pct()) << ','
        << (c.miss() ? "MISS" : "ok") << '\n';
    if (c.miss()) ++misses;
  }
  out << "misses=" << misses << '\n';
}

}  // namespace numasched
