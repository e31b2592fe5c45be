#pragma once

#include <vector>

#include "numasched/core_model.hpp"

namespace numasched {

/// counts(g, n): accesses by every thread of group g to node n's DRAM.
class GroupDramMatrix {
 public:
  GroupDramMatrix() = default;
  GroupDramMatrix(std::size_t groups, std::size_t nodes);

  static GroupDramMatrix from_rows(const std::vector<std::vector<Count>>& rows);

  std::size_t groups() const { return groups_; }
  std::size_t nodes() const { return nodes_; }
  bool square() const { return groups_ == nodes_; }
  Count operator()(std::size_t g, NodeId n) const { return counts_[g * nodes_ + n]; }
  void add(std::size_t g, NodeId n, Count value) { counts_[g * nodes_ + n] += value; }

  bool operator==(const GroupDramMatrix&) const = default;

 private:
  std::size_t groups_ = 0;
  std::size_t nodes_ = 0;
  std::vector<Count> counts_;
};

GroupDramMatrix aggregate_group_dram(const Grouping& grouping, const DramMatrix& dram);

/// Global greedy: walk all (group, node) counts in descending order and bind
/// a group to a node whenever both are still free. Ties go to the lower
/// (group, node) pair.
NodeAssignment assign_global_greedy(const GroupDramMatrix& gd);

/// Per-node greedy: node 0 takes the unassigned group with the most accesses
/// to it, then node 1, and so on. Ties go to the lowest group index.
NodeAssignment assign_per_node_greedy(const GroupDramMatrix& gd);

/// Sum of counts landing on the group's own node.
Count local_accesses(const GroupDramMatrix& gd, const NodeAssignment& a);

}  // namespace numasched
