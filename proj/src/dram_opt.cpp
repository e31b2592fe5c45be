#include "numasched/dram_opt.hpp"

#include <algorithm>

#include "numasched/errors.hpp"

namespace numasched {

namespace {

constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);

void require_square(const GroupDramMatrix& gd) {
  if (!gd.square()) throw InvalidArgument("group DRAM matrix must be square");
}

}  // namespace

GroupDramMatrix::GroupDramMatrix(std::size_t groups, std::size_t nodes)
    : groups_(groups), nodes_(nodes), counts_(groups * nodes, 0) {}

GroupDramMatrix GroupDramMatrix::from_rows(const std::vector<std::vector<Count>>& rows) {
  const std::size_t nodes = rows.empty() ? 0 : rows.front().size();
  GroupDramMatrix m(rows.size(), nodes);
  for (std::size_t g = 0; g < rows.size(); ++g) {
    if (rows[g].size() != nodes) throw InvalidArgument("group DRAM rows differ in length");
    for (std::size_t n = 0; n < nodes; ++n) m.add(g, n, rows[g][n]);
  }
  return m;
}

GroupDramMatrix aggregate_group_dram(const Grouping& grouping, const DramMatrix& dram) {
  if (grouping.groups.size() != dram.nodes()) {
    throw InvalidArgument("group count does not match DRAM node count");
  }
  std::size_t members = 0;
  for (const auto& g : grouping.groups) members += g.size();
  if (members != dram.threads()) throw InvalidArgument("grouping and DRAM matrix disagree on thread count");

  GroupDramMatrix gd(grouping.groups.size(), dram.nodes());
  for (std::size_t g = 0; g < grouping.groups.size(); ++g) {
    for (ThreadId t : grouping.groups[g]) {
      if (t >= dram.threads()) throw InvalidArgument("grouping references a thread outside the DRAM matrix");
      for (NodeId n = 0; n < dram.nodes(); ++n) gd.add(g, n, dram(t, n));
    }
  }
  return gd;
}

NodeAssignment assign_global_greedy(const GroupDramMatrix& gd) {
  require_square(gd);
  const std::size_t l = gd.groups();

  struct Cell {
    std::size_t group;
    NodeId node;
    Count count;
  };
  std::vector<Cell> cells;
  cells.reserve(l * l);
  for (std::size_t g = 0; g < l; ++g) {
    for (NodeId n = 0; n < l; ++n) cells.push_back({g, n, gd(g, n)});
  }
  // Row-major generation order makes (group, node) the stable tie-break.
  std::stable_sort(cells.begin(), cells.end(),
                   [](const Cell& a, const Cell& b) { return a.count > b.count; });

  NodeAssignment out;
  out.node_of_group.assign(l, kUnassigned);
  std::vector<bool> node_taken(l, false);
  std::size_t assigned = 0;
  for (const Cell& c : cells) {
    if (assigned == l) break;
    if (out.node_of_group[c.group] != kUnassigned || node_taken[c.node]) continue;
    out.node_of_group[c.group] = c.node;
    node_taken[c.node] = true;
    ++assigned;
  }
  return out;
}

NodeAssignment assign_per_node_greedy(const GroupDramMatrix& gd) {
  require_square(gd);
  const std::size_t l = gd.groups();

  NodeAssignment out;
  out.node_of_group.assign(l, kUnassigned);
  for (NodeId n = 0; n < l; ++n) {
    std::size_t pick = kUnassigned;
    for (std::size_t g = 0; g < l; ++g) {
      if (out.node_of_group[g] != kUnassigned) continue;
      if (pick == kUnassigned || gd(g, n) > gd(pick, n)) pick = g;
    }
    out.node_of_group[pick] = n;
  }
  return out;
}

Count local_accesses(const GroupDramMatrix& gd, const NodeAssignment& a) {
  Count local = 0;
  for (std::size_t g = 0; g < a.node_of_group.size(); ++g) local += gd(g, a.node_of_group[g]);
  return local;
}

}  // namespace numasched
