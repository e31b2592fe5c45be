#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace numasched {

using ThreadId = std::size_t;
using NodeId = std::size_t;
using Count = std::uint64_t;
using Cycles = std::uint64_t;

/// Machine shape and run length. One thread per core, so the thread count is
/// always nodes * cores_per_node.
struct SystemConfig {
  std::size_t n_threads = 16;
  std::size_t n_nodes = 4;
  std::size_t cores_per_node = 4;
  std::size_t n_quanta = 16;

  /// Builds a load-balanced config; throws InvalidArgument if it is not valid.
  static SystemConfig make(std::size_t nodes, std::size_t cores_per_node,
                           std::size_t quanta);

  std::vector<std::string> violations() const;
  void validate() const;

  bool operator==(const SystemConfig&) const = default;
};

/// Latencies in cycles. Defaults are the base machine configuration
/// (2 GHz, 4 sockets x 4 cores, 1 MB shared cache per socket).
struct LatencyConfig {
  Cycles c2c_local = 50;
  Cycles c2c_remote = 100;
  Cycles dram_local = 125;
  Cycles dram_remote = 250;
  // 64 KB of still-useful data per thread at 64-byte lines.
  Count affinity_lines = 1024;
  Cycles affinity_line_latency = 250;

  Cycles migration_penalty() const { return affinity_lines * affinity_line_latency; }

  std::vector<std::string> violations() const;
  void validate() const;

  bool operator==(const LatencyConfig&) const = default;
};

/// L thread sets of K threads each. Group order is the emission order of the
/// algorithm that produced it; members are kept in ascending id order.
struct Grouping {
  std::vector<std::vector<ThreadId>> groups;

  /// Same partition with groups ordered by smallest member.
  Grouping canonical() const;
  /// True if both describe the same thread partition, ignoring group labels.
  bool same_partition(const Grouping& other) const;

  bool operator==(const Grouping&) const = default;
};

/// node_of_group[g] is the node that runs group g.
struct NodeAssignment {
  std::vector<NodeId> node_of_group;

  static NodeAssignment identity(std::size_t n_nodes);

  bool operator==(const NodeAssignment&) const = default;
};

struct Schedule {
  Grouping grouping;
  NodeAssignment assignment;

  /// Node of every thread, indexed by thread id. Requires a valid schedule.
  std::vector<NodeId> node_of_threads() const;
  std::size_t thread_count() const;

  /// Same thread placement, regardless of group labels or order.
  bool same_placement(const Schedule& other) const;

  bool operator==(const Schedule&) const = default;
};

/// Symmetric pairwise cache-to-cache transfer counts with a zero diagonal.
class C2CMatrix {
 public:
  C2CMatrix() = default;
  explicit C2CMatrix(std::size_t n_threads);

  /// Throws InvalidArgument unless rows form a symmetric, zero-diagonal square.
  static C2CMatrix from_rows(const std::vector<std::vector<Count>>& rows);

  std::size_t size() const { return n_; }
  Count operator()(ThreadId i, ThreadId j) const { return counts_[i * n_ + j]; }
  /// Sets both (i, j) and (j, i). i != j.
  void set_pair(ThreadId i, ThreadId j, Count value);

  bool operator==(const C2CMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<Count> counts_;
};

/// Per-thread DRAM access counts, one column per node.
class DramMatrix {
 public:
  DramMatrix() = default;
  DramMatrix(std::size_t n_threads, std::size_t n_nodes);

  static DramMatrix from_rows(const std::vector<std::vector<Count>>& rows);

  std::size_t threads() const { return threads_; }
  std::size_t nodes() const { return nodes_; }
  Count operator()(ThreadId t, NodeId n) const { return counts_[t * nodes_ + n]; }
  void set(ThreadId t, NodeId n, Count value) { counts_[t * nodes_ + n] = value; }

  bool operator==(const DramMatrix&) const = default;

 private:
  std::size_t threads_ = 0;
  std::size_t nodes_ = 0;
  std::vector<Count> counts_;
};

/// Group g holds threads g*K .. g*K+K-1 and runs on node g.
Schedule identity_schedule(const SystemConfig& config);

/// Every invariant the schedule breaks for `config`; empty when valid.
std::vector<std::string> validate_schedule(const Schedule& s, const SystemConfig& config);

/// Threads whose node differs between the two schedules, ascending.
std::vector<ThreadId> migrated_threads(const Schedule& prev, const Schedule& next);

}  // namespace numasched
