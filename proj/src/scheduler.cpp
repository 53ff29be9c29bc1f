#include "amapsim/scheduler.hpp"

#include <algorithm>

namespace amapsim {

const char* policy_mode_name(PolicyMode m) {
  switch (m) {
    case PolicyMode::Amapmt: return "amapmt";
    case PolicyMode::BaselineNone: return "baseline-none";
    case PolicyMode::PriorityOnly: return "priority-only";
    case PolicyMode::TtlOnly: return "ttl-only";
  }
  return "?";
}

bool parse_policy_mode(const std::string& name, PolicyMode& out) {
  for (PolicyMode m : {PolicyMode::Amapmt, PolicyMode::BaselineNone,
                       PolicyMode::PriorityOnly, PolicyMode::TtlOnly}) {
    if (name == policy_mode_name(m)) {
      out = m;
      return true;
    }
  }
  return false;
}

namespace {

int compare_key(const RequestTableEntry& a, const RequestTableEntry& b, SortKey key) {
  switch (key) {
    case SortKey::Deadline:  // earlier deadline first
      if (a.deadline != b.deadline) return a.deadline < b.deadline ? -1 : 1;
      return 0;
    case SortKey::Priority:  // higher priority first
      return -compare_priority(a.priority, b.priority);
    case SortKey::Csi:  // cleaner channel first
      if (a.ber != b.ber) return a.ber < b.ber ? -1 : 1;
      return 0;
  }
  return 0;
}

// Full deterministic order: mode rank, then reservation age, then identity.
bool before(const RequestTableEntry& a, const RequestTableEntry& b,
            const PolicyConfig& policy) {
  const int r = rank_compare(a, b, policy);
  if (r != 0) return r < 0;
  if (a.ra_arrival != b.ra_arrival) return a.ra_arrival < b.ra_arrival;
  if (a.station != b.station) return a.station < b.station;
  return a.media < b.media;
}

}  // namespace

int rank_compare(const RequestTableEntry& a, const RequestTableEntry& b,
                 const PolicyConfig& policy) {
  switch (policy.mode) {
    case PolicyMode::Amapmt:
      for (SortKey key : policy.key_order) {
        const int c = compare_key(a, b, key);
        if (c != 0) return c;
      }
      return 0;
    case PolicyMode::TtlOnly:
      return compare_key(a, b, SortKey::Deadline);
    case PolicyMode::PriorityOnly:
      return compare_key(a, b, SortKey::Priority);
    case PolicyMode::BaselineNone:
      if (a.ra_arrival != b.ra_arrival) return a.ra_arrival < b.ra_arrival ? -1 : 1;
      return 0;
  }
  return 0;
}

std::size_t wrr_pick(const std::vector<const RequestTableEntry*>& tied) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < tied.size(); ++i) {
    const RequestTableEntry& a = *tied[i];
    const RequestTableEntry& b = *tied[best];
    if (a.wrr_credit != b.wrr_credit) {
      if (a.wrr_credit > b.wrr_credit) best = i;
      continue;
    }
    if (a.ra_arrival != b.ra_arrival) {
      if (a.ra_arrival < b.ra_arrival) best = i;
      continue;
    }
    if (a.station != b.station) {
      if (a.station < b.station) best = i;
      continue;
    }
    if (a.media < b.media) best = i;
  }
  return best;
}

GrantDecision serve_queue(std::vector<RequestTableEntry>& table,
                          const FrameLayout& layout, const PolicyConfig& policy,
                          SimTime now) {
  GrantDecision decision;
  decision.frame_start = now;

  // Admission gate and credit top-up. Entries out of the running this frame
  // forfeit accumulated credit so an idle reservation cannot hoard service.
  std::vector<RequestTableEntry*> active;
  active.reserve(table.size());
  for (RequestTableEntry& e : table) {
    const bool pass =
        policy.mode != PolicyMode::Amapmt || csi_gate_pass(e, policy.csi_gate_ber);
    if (pass && entry_demand(e) > 0) {
      e.wrr_credit += policy.weight_for(e.media);
      active.push_back(&e);
    } else {
      e.wrr_credit = 0;
    }
  }
  if (active.empty()) return decision;

  std::sort(active.begin(), active.end(),
            [&policy](const RequestTableEntry* a, const RequestTableEntry* b) {
              return before(*a, *b, policy);
            });

  const int slots = layout.data_slots;
  const int n = static_cast<int>(active.size());
  const int cap = (slots + n - 1) / n;

  int slots_left = slots;
  int next_slot = 0;
  std::size_t group_begin = 0;
  while (group_begin < active.size() && slots_left > 0) {
    std::size_t group_end = group_begin + 1;
    while (group_end < active.size() &&
           rank_compare(*active[group_begin], *active[group_end], policy) == 0) {
      ++group_end;
    }
    const int group_size = static_cast<int>(group_end - group_begin);
    int budget = std::min(slots_left, group_size * cap);

    std::vector<RequestTableEntry*> members(active.begin() + group_begin,
                                            active.begin() + group_end);
    std::vector<int> remaining(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
      remaining[i] = entry_demand(*members[i]);
    }

    auto grant_one = [&](std::size_t idx) {
      RequestTableEntry* entry = members[idx];
      decision.assignments.push_back({next_slot++, entry->station, entry->media});
      entry->wrr_credit -= 1;
      remaining[idx] -= 1;
      --budget;
      --slots_left;
    };

    // Guarantee pass: one slot to every member with demand, so that a credit
    // imbalance inside a tie can never starve a member outright.
    std::vector<bool> served(members.size(), false);
    auto pick = [&](bool first_pass) -> int {
      std::vector<const RequestTableEntry*> candidates;
      std::vector<std::size_t> index_of;
      for (std::size_t i = 0; i < members.size(); ++i) {
        if (remaining[i] > 0 && !(first_pass && served[i])) {
          candidates.push_back(members[i]);
          index_of.push_back(i);
        }
      }
      if (candidates.empty()) return -1;
      return static_cast<int>(index_of[wrr_pick(candidates)]);
    };

    while (budget > 0 && slots_left > 0) {
      const int idx = pick(true);
      if (idx < 0) break;
      served[static_cast<std::size_t>(idx)] = true;
      grant_one(static_cast<std::size_t>(idx));
    }

    // Remainder by deficit credit.
    while (budget > 0 && slots_left > 0) {
      const int idx = pick(false);
      if (idx < 0) break;
      grant_one(static_cast<std::size_t>(idx));
    }

    group_begin = group_end;
  }
  return decision;
}

}  // namespace amapsim
