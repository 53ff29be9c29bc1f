// Test-only reference implementation of the per-frame grant computation,
// kept independent of the production scheduler: ranking by explicit pairwise
// comparison and selection sort, group budgets re-derived by naive scans.
#pragma once

#include <algorithm>
#include <vector>

#include "amapsim/scheduler.hpp"

namespace amapsim::testref {

inline int ref_demand(const RequestTableEntry& e) {
  if (e.pending > 0) return e.pending;
  return e.more_expected ? 1 : 0;
}

inline int ref_cmp_priority(const Priority& a, const Priority& b) {
  const long long va = a.low_latency ? (1LL << 40) : a.level;
  const long long vb = b.low_latency ? (1LL << 40) : b.level;
  if (va != vb) return va > vb ? -1 : 1;  // higher priority ranks earlier
  return 0;
}

inline int ref_rank(const RequestTableEntry& a, const RequestTableEntry& b,
                    const PolicyConfig& pc) {
  auto by_key = [&](SortKey k) -> int {
    if (k == SortKey::Deadline) {
      if (a.deadline != b.deadline) return a.deadline < b.deadline ? -1 : 1;
      return 0;
    }
    if (k == SortKey::Priority) return ref_cmp_priority(a.priority, b.priority);
    if (a.ber != b.ber) return a.ber < b.ber ? -1 : 1;
    return 0;
  };
  switch (pc.mode) {
    case PolicyMode::Amapmt:
      for (SortKey k : pc.key_order) {
        const int c = by_key(k);
        if (c != 0) return c;
      }
      return 0;
    case PolicyMode::TtlOnly:
      return by_key(SortKey::Deadline);
    case PolicyMode::PriorityOnly:
      return by_key(SortKey::Priority);
    case PolicyMode::BaselineNone:
      if (a.ra_arrival != b.ra_arrival) return a.ra_arrival < b.ra_arrival ? -1 : 1;
      return 0;
  }
  return 0;
}

inline bool ref_tiebreak_before(const RequestTableEntry& a,
                                const RequestTableEntry& b) {
  if (a.ra_arrival != b.ra_arrival) return a.ra_arrival < b.ra_arrival;
  if (a.station != b.station) return a.station < b.station;
  return a.media < b.media;
}

inline GrantDecision ref_serve(std::vector<RequestTableEntry>& table,
                               int data_slots, const PolicyConfig& pc,
                               SimTime now) {
  GrantDecision out;
  out.frame_start = now;

  std::vector<int> active;
  for (int i = 0; i < static_cast<int>(table.size()); ++i) {
    RequestTableEntry& e = table[static_cast<std::size_t>(i)];
    const bool pass = pc.mode != PolicyMode::Amapmt || e.ber <= pc.csi_gate_ber;
    if (pass && ref_demand(e) > 0) {
      e.wrr_credit += pc.wrr_weights[static_cast<std::size_t>(e.media)];
      active.push_back(i);
    } else {
      e.wrr_credit = 0;
    }
  }
  if (active.empty()) return out;

  // selection sort by (rank, arrival, station, media)
  std::vector<int> order;
  std::vector<bool> taken(active.size(), false);
  for (std::size_t n = 0; n < active.size(); ++n) {
    int best = -1;
    for (std::size_t i = 0; i < active.size(); ++i) {
      if (taken[i]) continue;
      if (best < 0) {
        best = static_cast<int>(i);
        continue;
      }
      const RequestTableEntry& a = table[static_cast<std::size_t>(active[i])];
      const RequestTableEntry& b =
          table[static_cast<std::size_t>(active[static_cast<std::size_t>(best)])];
      const int r = ref_rank(a, b, pc);
      if (r < 0 || (r == 0 && ref_tiebreak_before(a, b))) {
        best = static_cast<int>(i);
      }
    }
    taken[static_cast<std::size_t>(best)] = true;
    order.push_back(active[static_cast<std::size_t>(best)]);
  }

  const int n_active = static_cast<int>(order.size());
  const int cap = (data_slots + n_active - 1) / n_active;
  int slots_left = data_slots;
  int next_slot = 0;

  std::size_t gi = 0;
  while (gi < order.size() && slots_left > 0) {
    std::size_t gj = gi + 1;
    while (gj < order.size() &&
           ref_rank(table[static_cast<std::size_t>(order[gi])],
                    table[static_cast<std::size_t>(order[gj])], pc) == 0) {
      ++gj;
    }
    int budget = std::min(slots_left, static_cast<int>(gj - gi) * cap);
    std::vector<int> members(order.begin() + static_cast<long>(gi),
                             order.begin() + static_cast<long>(gj));
    std::vector<int> rem;
    rem.reserve(members.size());
    for (int m : members) {
      rem.push_back(ref_demand(table[static_cast<std::size_t>(m)]));
    }
    std::vector<bool> first_done(members.size(), false);

    auto pick = [&](bool first_pass) -> int {
      int best = -1;
      for (std::size_t i = 0; i < members.size(); ++i) {
        if (rem[i] <= 0) continue;
        if (first_pass && first_done[i]) continue;
        if (best < 0) {
          best = static_cast<int>(i);
          continue;
        }
        const RequestTableEntry& a = table[static_cast<std::size_t>(members[i])];
        const RequestTableEntry& b =
            table[static_cast<std::size_t>(members[static_cast<std::size_t>(best)])];
        if (a.wrr_credit != b.wrr_credit) {
          if (a.wrr_credit > b.wrr_credit) best = static_cast<int>(i);
        } else if (ref_tiebreak_before(a, b)) {
          best = static_cast<int>(i);
        }
      }
      return best;
    };

    for (int pass = 0; pass < 2; ++pass) {
      while (budget > 0 && slots_left > 0) {
        const int idx = pick(pass == 0);
        if (idx < 0) break;
        RequestTableEntry& e = table[static_cast<std::size_t>(
            members[static_cast<std::size_t>(idx)])];
        out.assignments.push_back({next_slot++, e.station, e.media});
        e.wrr_credit -= 1;
        rem[static_cast<std::size_t>(idx)] -= 1;
        if (pass == 0) first_done[static_cast<std::size_t>(idx)] = true;
        --budget;
        --slots_left;
      }
    }
    gi = gj;
  }
  return out;
}

}  // namespace amapsim::testref
