#include "numasched/workload.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "numasched/errors.hpp"

namespace numasched {

namespace {

// Deterministic across standard libraries: uses raw engine output only.
class Jitter {
 public:
  Jitter(std::uint64_t seed, std::size_t quantum, double pct) : pct_(pct) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(quantum)};
    engine_.seed(seq);
  }

  Count apply(Count value) {
    if (pct_ <= 0.0) return value;
    const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    const double factor = 1.0 + (pct_ / 100.0) * (2.0 * unit - 1.0);
    return static_cast<Count>(std::llround(static_cast<double>(value) * factor));
  }

 private:
  double pct_;
  std::mt19937_64 engine_;
};

}  // namespace

void Trace::validate() const {
  config.validate();
  if (quanta.size() != config.n_quanta) throw InvalidArgument("trace quantum count does not match config");
  for (const auto& q : quanta) {
    if (q.c2c.size() != config.n_threads) throw InvalidArgument("c2c matrix has wrong size");
    if (q.dram.threads() != config.n_threads || q.dram.nodes() != config.n_nodes) {
      throw InvalidArgument("DRAM matrix has wrong shape");
    }
    for (ThreadId i = 0; i < config.n_threads; ++i) {
      if (q.c2c(i, i) != 0) throw InvalidArgument("c2c diagonal must be zero");
      for (ThreadId j = i + 1; j < config.n_threads; ++j) {
        if (q.c2c(i, j) != q.c2c(j, i)) throw InvalidArgument("c2c matrix must be symmetric");
      }
    }
  }
}

void WorkloadSpec::validate() const {
  config.validate();
  if (phases < 1) throw InvalidArgument("need at least one phase");
  if (config.n_quanta % phases != 0) throw InvalidArgument("phases must divide quanta");
  if (c2c_intra <= c2c_inter) throw InvalidArgument("c2c_intra must exceed c2c_inter");
  if (dram_home <= dram_other) throw InvalidArgument("dram_home must exceed dram_other");
  if (!(jitter_pct >= 0.0 && jitter_pct <= 100.0)) throw InvalidArgument("jitter_pct must be within [0, 100]");
}

WorkloadSpec workload_preset(std::size_t phases, const SystemConfig& config) {
  WorkloadSpec spec;
  spec.config = config;
  spec.phases = phases;
  spec.validate();
  return spec;
}

std::size_t phase_of_quantum(std::size_t q, const WorkloadSpec& spec) {
  if (q < 1 || q > spec.config.n_quanta) throw InvalidArgument("quantum index out of range");
  if (spec.phases < 1 || spec.config.n_quanta % spec.phases != 0) {
    throw InvalidArgument("phases must divide quanta");
  }
  return (q - 1) / (spec.config.n_quanta / spec.phases);
}

Schedule planted_grouping(std::size_t phase, const SystemConfig& config) {
  config.validate();
  const std::size_t n = config.n_threads;
  const std::size_t k = config.cores_per_node;
  const std::size_t l = config.n_nodes;
  const std::size_t shift = (phase + 1) % n;

  Schedule s;
  s.grouping.groups.resize(l);
  s.assignment.node_of_group.resize(l);
  for (std::size_t g = 0; g < l; ++g) {
    for (std::size_t m = 0; m < k; ++m) {
      s.grouping.groups[g].push_back((g * k + m + shift) % n);
    }
    std::sort(s.grouping.groups[g].begin(), s.grouping.groups[g].end());
    s.assignment.node_of_group[g] = (g + phase + 2) % l;
  }
  return s;
}

QuantumCounts synth_quantum(std::size_t q, const WorkloadSpec& spec) {
  spec.validate();
  const SystemConfig& cfg = spec.config;
  const Schedule planted = planted_grouping(phase_of_quantum(q, spec), cfg);

  std::vector<std::size_t> group_of(cfg.n_threads);
  for (std::size_t g = 0; g < planted.grouping.groups.size(); ++g) {
    for (ThreadId t : planted.grouping.groups[g]) group_of[t] = g;
  }
  const auto home = planted.node_of_threads();

  Jitter jitter(spec.seed, q, spec.jitter_pct);
  QuantumCounts out{C2CMatrix(cfg.n_threads), DramMatrix(cfg.n_threads, cfg.n_nodes)};
  for (ThreadId i = 0; i < cfg.n_threads; ++i) {
    for (ThreadId j = i + 1; j < cfg.n_threads; ++j) {
      const Count base = group_of[i] == group_of[j] ? spec.c2c_intra : spec.c2c_inter;
      out.c2c.set_pair(i, j, jitter.apply(base));
    }
  }
  for (ThreadId t = 0; t < cfg.n_threads; ++t) {
    for (NodeId n = 0; n < cfg.n_nodes; ++n) {
      out.dram.set(t, n, jitter.apply(n == home[t] ? spec.dram_home : spec.dram_other));
    }
  }
  return out;
}

Trace gen_trace(const WorkloadSpec& spec) {
  spec.validate();
  Trace trace{spec.config, {}};
  trace.quanta.reserve(spec.config.n_quanta);
  for (std::size_t q = 1; q <= spec.config.n_quanta; ++q) trace.quanta.push_back(synth_quantum(q, spec));
  return trace;
}

}  // namespace numasched
