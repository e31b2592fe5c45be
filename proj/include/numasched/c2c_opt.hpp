#pragma once

#include <vector>

#include "numasched/core_model.hpp"

namespace numasched {

/// One unordered thread pair and its transfer count; lo < hi.
struct PairEntry {
  ThreadId lo;
  ThreadId hi;
  Count count;

  bool operator==(const PairEntry&) const = default;
};

/// All pairs among `threads`, sorted by count descending, then (lo, hi)
/// ascending. `threads` must be ascending.
std::vector<PairEntry> sorted_pairs(const C2CMatrix& c2c, const std::vector<ThreadId>& threads);

/// Max-partner grouping. Each round picks the thread whose strongest partner
/// link is the largest among the remaining threads, and groups it with its
/// top K-1 partners. Ties go to the lowest thread id. Requires K >= 2.
Grouping group_by_max_partner(const C2CMatrix& c2c, const SystemConfig& config);

/// Sorted-pairs grouping. Each round seeds a group with the heaviest
/// remaining pair and extends it from pairs further down the sorted list:
/// a disjoint pair joins whole; a pair sharing one endpoint with the group
/// brings in its other endpoint l plus l's strongest remaining partner.
/// Defined for even K (the base machine uses K = 4); odd K throws
/// UnsupportedConfig.
Grouping group_by_sorted_pairs(const C2CMatrix& c2c, const SystemConfig& config);

}  // namespace numasched
