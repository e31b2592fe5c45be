#include "numasched/c2c_opt.hpp"

#include <algorithm>
#include <numeric>

#include "numasched/errors.hpp"

namespace numasched {

namespace {

void check_inputs(const C2CMatrix& c2c, const SystemConfig& config) {
  config.validate();
  if (c2c.size() != config.n_threads) {
    throw InvalidArgument("c2c matrix size does not match thread count");
  }
}

std::vector<ThreadId> all_threads(std::size_t n) {
  std::vector<ThreadId> t(n);
  std::iota(t.begin(), t.end(), ThreadId{0});
  return t;
}

void remove_members(std::vector<ThreadId>& remaining, const std::vector<ThreadId>& group) {
  std::erase_if(remaining, [&](ThreadId t) {
    return std::find(group.begin(), group.end(), t) != group.end();
  });
}

bool contains(const std::vector<ThreadId>& v, ThreadId t) {
  return std::find(v.begin(), v.end(), t) != v.end();
}

// Strongest partner of `t` among `pool`, skipping `exclude`; lowest id wins ties.
ThreadId best_partner(const C2CMatrix& c2c, ThreadId t, const std::vector<ThreadId>& pool,
                      const std::vector<ThreadId>& exclude) {
  ThreadId best = 0;
  bool found = false;
  for (ThreadId p : pool) {
    if (p == t || contains(exclude, p)) continue;
    if (!found || c2c(t, p) > c2c(t, best)) {
      best = p;
      found = true;
    }
  }
  if (!found) throw InvalidArgument("no partner available");
  return best;
}

}  // namespace

std::vector<PairEntry> sorted_pairs(const C2CMatrix& c2c, const std::vector<ThreadId>& threads) {
  std::vector<PairEntry> pairs;
  pairs.reserve(threads.size() * (threads.size() - (threads.empty() ? 0 : 1)) / 2);
  for (std::size_t a = 0; a < threads.size(); ++a) {
    for (std::size_t b = a + 1; b < threads.size(); ++b) {
      pairs.push_back({threads[a], threads[b], c2c(threads[a], threads[b])});
    }
  }
  // Generation order is already (lo, hi) ascending, so a stable sort on count
  // alone gives the full tie-break order.
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const PairEntry& x, const PairEntry& y) { return x.count > y.count; });
  return pairs;
}

Grouping group_by_max_partner(const C2CMatrix& c2c, const SystemConfig& config) {
  check_inputs(c2c, config);
  const std::size_t k = config.cores_per_node;
  if (k < 2) throw InvalidArgument("max-partner grouping needs at least two cores per node");

  Grouping out;
  std::vector<ThreadId> remaining = all_threads(config.n_threads);
  while (!remaining.empty()) {
    // Max_i over the threads still in the pool.
    ThreadId seed = remaining.front();
    Count seed_max = 0;
    bool first = true;
    for (ThreadId i : remaining) {
      Count max_i = 0;
      for (ThreadId j : remaining) {
        if (j != i) max_i = std::max(max_i, c2c(i, j));
      }
      if (first || max_i > seed_max) {
        seed = i;
        seed_max = max_i;
        first = false;
      }
    }

    std::vector<ThreadId> partners;
    for (ThreadId j : remaining) {
      if (j != seed) partners.push_back(j);
    }
    std::stable_sort(partners.begin(), partners.end(),
                     [&](ThreadId a, ThreadId b) { return c2c(seed, a) > c2c(seed, b); });
    partners.resize(k - 1);

    std::vector<ThreadId> group{seed};
    group.insert(group.end(), partners.begin(), partners.end());
    std::sort(group.begin(), group.end());
    remove_members(remaining, group);
    out.groups.push_back(std::move(group));
  }
  return out;
}

Grouping group_by_sorted_pairs(const C2CMatrix& c2c, const SystemConfig& config) {
  check_inputs(c2c, config);
  const std::size_t k = config.cores_per_node;
  if (k % 2 != 0) {
    throw UnsupportedConfig("sorted-pairs grouping needs an even number of cores per node");
  }

  Grouping out;
  std::vector<ThreadId> remaining = all_threads(config.n_threads);
  while (!remaining.empty()) {
    const auto pairs = sorted_pairs(c2c, remaining);

    // Nothing left to discriminate on: fill the remaining groups in id order.
    if (pairs.front().count == 0) {
      for (std::size_t at = 0; at < remaining.size(); at += k) {
        out.groups.emplace_back(remaining.begin() + static_cast<std::ptrdiff_t>(at),
                                remaining.begin() + static_cast<std::ptrdiff_t>(at + k));
      }
      break;
    }

    std::vector<ThreadId> group{pairs.front().lo, pairs.front().hi};
    for (std::size_t at = 1; group.size() < k && at < pairs.size(); ++at) {
      const PairEntry& next = pairs[at];
      const bool has_lo = contains(group, next.lo);
      const bool has_hi = contains(group, next.hi);
      if (has_lo && has_hi) continue;
      if (!has_lo && !has_hi) {
        group.push_back(next.lo);
        group.push_back(next.hi);
        continue;
      }
      // One endpoint already in the group: take the other one and its
      // strongest partner outside the group.
      const ThreadId outsider = has_lo ? next.hi : next.lo;
      group.push_back(outsider);
      group.push_back(best_partner(c2c, outsider, remaining, group));
    }

    std::sort(group.begin(), group.end());
    remove_members(remaining, group);
    out.groups.push_back(std::move(group));
  }
  return out;
}

}  // namespace numasched
