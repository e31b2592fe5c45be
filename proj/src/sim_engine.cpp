#include "numasched/sim_engine.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "numasched/c2c_opt.hpp"
#include "numasched/dram_opt.hpp"
#include "numasched/errors.hpp"

namespace numasched {

Policy Policy::parse(std::string_view text, bool affinity) {
  Policy p;
  p.affinity = affinity;
  if (text == "none") return p;
  if (text.empty()) throw InvalidArgument("empty policy");

  bool seen_c2c = false;
  bool seen_dram = false;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t plus = text.find('+', start);
    const std::string_view part =
        text.substr(start, plus == std::string_view::npos ? std::string_view::npos : plus - start);
    if (part == "c2c1" || part == "c2c2") {
      if (seen_c2c) throw InvalidArgument("policy names two c2c algorithms: " + std::string(text));
      p.c2c = part == "c2c1" ? C2CAlgorithm::kMaxPartner : C2CAlgorithm::kSortedPairs;
      seen_c2c = true;
    } else if (part == "dram1" || part == "dram2") {
      if (seen_dram) throw InvalidArgument("policy names two DRAM algorithms: " + std::string(text));
      p.dram = part == "dram1" ? DramAlgorithm::kGlobalGreedy : DramAlgorithm::kPerNodeGreedy;
      seen_dram = true;
    } else {
      throw InvalidArgument("unknown policy component '" + std::string(part) + "'");
    }
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  return p;
}

std::string Policy::name() const {
  std::string out;
  switch (c2c) {
    case C2CAlgorithm::kNone: break;
    case C2CAlgorithm::kMaxPartner: out = "c2c1"; break;
    case C2CAlgorithm::kSortedPairs: out = "c2c2"; break;
  }
  if (dram != DramAlgorithm::kNone) {
    if (!out.empty()) out += '+';
    out += dram == DramAlgorithm::kGlobalGreedy ? "dram1" : "dram2";
  }
  return out.empty() ? "none" : out;
}

Schedule next_schedule(const Schedule& current, const QuantumCounts& observed,
                       const Policy& policy, const SystemConfig& config) {
  Schedule next;
  switch (policy.c2c) {
    case C2CAlgorithm::kNone: next.grouping = current.grouping; break;
    case C2CAlgorithm::kMaxPartner: next.grouping = group_by_max_partner(observed.c2c, config); break;
    case C2CAlgorithm::kSortedPairs: next.grouping = group_by_sorted_pairs(observed.c2c, config); break;
  }
  switch (policy.dram) {
    case DramAlgorithm::kNone:
      next.assignment = NodeAssignment::identity(config.n_nodes);
      break;
    case DramAlgorithm::kGlobalGreedy:
      next.assignment = assign_global_greedy(aggregate_group_dram(next.grouping, observed.dram));
      break;
    case DramAlgorithm::kPerNodeGreedy:
      next.assignment = assign_per_node_greedy(aggregate_group_dram(next.grouping, observed.dram));
      break;
  }
  return next;
}

SimResult simulate(const Trace& trace, const Policy& policy, const LatencyConfig& lat) {
  trace.validate();
  lat.validate();
  const SystemConfig& cfg = trace.config;
  const Schedule baseline = identity_schedule(cfg);

  SimResult r;
  r.per_quantum.reserve(cfg.n_quanta);
  r.schedules.reserve(cfg.n_quanta);

  Schedule current = baseline;
  Schedule previous = baseline;
  for (std::size_t q = 0; q < cfg.n_quanta; ++q) {
    const QuantumCounts& counts = trace.quanta[q];
    if (q > 0) current = next_schedule(current, trace.quanta[q - 1], policy, cfg);

    std::vector<ThreadId> moved;
    if (policy.affinity) moved = migrated_threads(previous, current);
    const CostBreakdown cost = quantum_cost(current, counts.c2c, counts.dram, lat, moved);
    const Cycles base = quantum_cost(baseline, counts.c2c, counts.dram, lat, {}).total;

    r.per_quantum.push_back(cost);
    r.baseline_per_quantum.push_back(base);
    r.migrations.push_back(moved.size());
    r.schedules.push_back(current);
    r.optimized_total += cost.total;
    r.baseline_total += base;
    previous = current;
  }
  r.improvement = improvement_pct(r.baseline_total, r.optimized_total);
  return r;
}

std::vector<SweepCell> sweep(const Trace& trace, const std::vector<Policy>& policies,
                             const std::vector<LatencyConfig>& lat_points, std::size_t max_threads) {
  if (policies.empty() || lat_points.empty()) throw InvalidArgument("sweep needs at least one policy and one latency point");

  std::vector<SweepCell> cells;
  cells.reserve(policies.size() * lat_points.size());
  for (const Policy& p : policies) {
    for (const LatencyConfig& lat : lat_points) cells.push_back({p, lat, {}});
  }

  std::size_t workers = max_threads ? max_threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, cells.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        cells[i].result = simulate(trace, cells[i].policy, cells[i].lat);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  if (failure) std::rethrow_exception(failure);
  return cells;
}

}  // namespace numasched
