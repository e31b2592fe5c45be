#include "numasched/core_model.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "numasched/errors.hpp"

namespace numasched {

namespace {

std::string join_violations(const std::vector<std::string>& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << "; ";
    out << v[i];
  }
  return out.str();
}

}  // namespace

SystemConfig SystemConfig::make(std::size_t nodes, std::size_t cores_per_node,
                                std::size_t quanta) {
  SystemConfig c{nodes * cores_per_node, nodes, cores_per_node, quanta};
  c.validate();
  return c;
}

std::vector<std::string> SystemConfig::violations() const {
  std::vector<std::string> v;
  if (n_nodes < 1) v.emplace_back("need at least one node");
  if (cores_per_node < 1) v.emplace_back("need at least one core per node");
  if (n_quanta < 1) v.emplace_back("need at least one quantum");
  if (n_threads < 2) v.emplace_back("need at least two threads");
  if (n_threads != n_nodes * cores_per_node) {
    v.emplace_back("thread count must equal nodes * cores_per_node");
  }
  return v;
}

void SystemConfig::validate() const {
  if (auto v = violations(); !v.empty()) {
    throw InvalidArgument("invalid system config: " + join_violations(v));
  }
}

std::vector<std::string> LatencyConfig::violations() const {
  std::vector<std::string> v;
  if (c2c_remote < c2c_local) v.emplace_back("c2c_remote must be >= c2c_local");
  if (dram_remote < dram_local) v.emplace_back("dram_remote must be >= dram_local");
  return v;
}

void LatencyConfig::validate() const {
  if (auto v = violations(); !v.empty()) {
    throw InvalidArgument("invalid latency config: " + join_violations(v));
  }
}

Grouping Grouping::canonical() const {
  Grouping out = *this;
  for (auto& g : out.groups) std::sort(g.begin(), g.end());
  std::sort(out.groups.begin(), out.groups.end());
  return out;
}

bool Grouping::same_partition(const Grouping& other) const {
  return canonical() == other.canonical();
}

NodeAssignment NodeAssignment::identity(std::size_t n_nodes) {
  NodeAssignment a;
  a.node_of_group.resize(n_nodes);
  std::iota(a.node_of_group.begin(), a.node_of_group.end(), NodeId{0});
  return a;
}

std::size_t Schedule::thread_count() const {
  std::size_t n = 0;
  for (const auto& g : grouping.groups) n += g.size();
  return n;
}

std::vector<NodeId> Schedule::node_of_threads() const {
  std::vector<NodeId> nodes(thread_count(), 0);
  for (std::size_t g = 0; g < grouping.groups.size(); ++g) {
    for (ThreadId t : grouping.groups[g]) nodes.at(t) = assignment.node_of_group.at(g);
  }
  return nodes;
}

bool Schedule::same_placement(const Schedule& other) const {
  return thread_count() == other.thread_count() &&
         node_of_threads() == other.node_of_threads();
}

C2CMatrix::C2CMatrix(std::size_t n_threads)
    : n_(n_threads), counts_(n_threads * n_threads, 0) {}

C2CMatrix C2CMatrix::from_rows(const std::vector<std::vector<Count>>& rows) {
  const std::size_t n = rows.size();
  C2CMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw InvalidArgument("c2c matrix must be square");
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j && rows[i][j] != 0) {
        throw InvalidArgument("c2c matrix must have a zero diagonal");
      }
      m.counts_[i * n + j] = rows[i][j];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m(i, j) != m(j, i)) throw InvalidArgument("c2c matrix must be symmetric");
    }
  }
  return m;
}

void C2CMatrix::set_pair(ThreadId i, ThreadId j, Count value) {
  if (i >= n_ || j >= n_ || i == j) throw InvalidArgument("bad c2c pair index");
  counts_[i * n_ + j] = value;
  counts_[j * n_ + i] = value;
}

DramMatrix::DramMatrix(std::size_t n_threads, std::size_t n_nodes)
    : threads_(n_threads), nodes_(n_nodes), counts_(n_threads * n_nodes, 0) {}

DramMatrix DramMatrix::from_rows(const std::vector<std::vector<Count>>& rows) {
  const std::size_t nodes = rows.empty() ? 0 : rows.front().size();
  DramMatrix m(rows.size(), nodes);
  for (std::size_t t = 0; t < rows.size(); ++t) {
    if (rows[t].size() != nodes) throw InvalidArgument("dram matrix rows differ in length");
    for (std::size_t n = 0; n < nodes; ++n) m.set(t, n, rows[t][n]);
  }
  return m;
}

Schedule identity_schedule(const SystemConfig& config) {
  config.validate();
  Schedule s;
  s.grouping.groups.resize(config.n_nodes);
  for (std::size_t g = 0; g < config.n_nodes; ++g) {
    for (std::size_t m = 0; m < config.cores_per_node; ++m) {
      s.grouping.groups[g].push_back(g * config.cores_per_node + m);
    }
  }
  s.assignment = NodeAssignment::identity(config.n_nodes);
  return s;
}

std::vector<std::string> validate_schedule(const Schedule& s, const SystemConfig& config) {
  std::vector<std::string> v = config.violations();
  if (!v.empty()) return v;

  const auto& groups = s.grouping.groups;
  if (groups.size() != config.n_nodes) v.emplace_back("wrong number of groups");

  std::vector<int> seen(config.n_threads, 0);
  bool duplicate = false;
  bool out_of_range = false;
  for (const auto& g : groups) {
    if (g.size() != config.cores_per_node) v.emplace_back("group size differs from cores_per_node");
    for (ThreadId t : g) {
      if (t >= config.n_threads) {
        out_of_range = true;
      } else if (seen[t]++) {
        duplicate = true;
      }
    }
  }
  if (duplicate) v.emplace_back("duplicate thread");
  if (out_of_range) v.emplace_back("thread id out of range");
  if (std::count(seen.begin(), seen.end(), 0) != 0) v.emplace_back("thread missing from grouping");

  const auto& nodes = s.assignment.node_of_group;
  if (nodes.size() != config.n_nodes) {
    v.emplace_back("assignment length differs from node count");
  } else {
    std::vector<int> used(config.n_nodes, 0);
    bool bijective = true;
    for (NodeId n : nodes) {
      if (n >= config.n_nodes || used[n]++) bijective = false;
    }
    if (!bijective) v.emplace_back("assignment not bijective");
  }
  return v;
}

std::vector<ThreadId> migrated_threads(const Schedule& prev, const Schedule& next) {
  if (prev.thread_count() != next.thread_count() ||
      prev.grouping.groups.size() != next.grouping.groups.size()) {
    throw InvalidArgument("schedules describe different system configs");
  }
  const auto before = prev.node_of_threads();
  const auto after = next.node_of_threads();
  std::vector<ThreadId> moved;
  for (ThreadId t = 0; t < before.size(); ++t) {
    if (before[t] != after[t]) moved.push_back(t);
  }
  return moved;
}

}  // namespace numasched
