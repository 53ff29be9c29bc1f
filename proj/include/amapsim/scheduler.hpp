#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "amapsim/channel.hpp"
#include "amapsim/media.hpp"
#include "amapsim/packets.hpp"

namespace amapsim {

// Grant policy at the base station.
//  amapmt        - CSI admission gate, then lexicographic order over the
//                  configured keys (default deadline, priority, channel
//                  quality), WRR credits among full ties.
//  baseline-none - FCFS by reservation arrival; deadlines and priorities are
//                  ignored entirely.
//  priority-only - order by source priority alone.
//  ttl-only      - order by earliest deadline alone.
enum class PolicyMode : std::uint8_t { Amapmt, BaselineNone, PriorityOnly, TtlOnly };

const char* policy_mode_name(PolicyMode m);
bool parse_policy_mode(const std::string& name, PolicyMode& out);

enum class SortKey : std::uint8_t { Deadline, Priority, Csi };

struct PolicyConfig {
  PolicyMode mode = PolicyMode::Amapmt;
  double csi_gate_ber = 1e-4;  // entries with ber above this are denied access
  std::array<SortKey, 3> key_order = {SortKey::Deadline, SortKey::Priority,
                                      SortKey::Csi};
  std::array<int, kMediaClassCount> wrr_weights = {1, 1, 1, 1, 1};

  int weight_for(MediaClass m) const {
    return wrr_weights[static_cast<std::size_t>(m)];
  }
};

// Base station scheduling state for one active (station, media) source.
struct RequestTableEntry {
  int station = 0;
  MediaClass media = MediaClass::Voice;
  Priority priority;
  SimTime deadline = 0;        // earliest deadline among the source's queued work
  double ber = 0.0;
  int pending = 0;             // packets the base station believes are queued
  bool more_expected = false;  // last piggyback bit seen on this entry
  SimTime ra_arrival = 0;      // when the founding request reached the table
  std::int64_t wrr_credit = 0;
};

// Packets worth scheduling for an entry: the advertised backlog, or one
// probe slot when the backlog is exhausted but the last piggyback bit said
// more data is waiting.
inline int entry_demand(const RequestTableEntry& e) {
  if (e.pending > 0) return e.pending;
  return e.more_expected ? 1 : 0;
}

// Deny iff the entry's channel is worse than the threshold.
inline bool csi_gate_pass(const RequestTableEntry& e, double threshold_ber) {
  return e.ber <= threshold_ber;
}

struct GrantAssignment {
  int slot_index = 0;
  int station = 0;
  MediaClass media = MediaClass::Voice;
};

struct GrantDecision {
  SimTime frame_start = 0;
  std::vector<GrantAssignment> assignments;  // slot indices dense from 0

  friend bool operator==(const GrantDecision& a, const GrantDecision& b)
  {
    if (a.frame_start != b.frame_start ||
        a.assignments.size() != b.assignments.size())
      return false;
    for (std::size_t i = 0; i < a.assignments.size(); ++i) {
      const auto& x = a.assignments[i];
      const auto& y = b.assignments[i];
      if (x.slot_index != y.slot_index || x.station != y.station ||
          x.media != y.media)
        return false;
    }
    return true;
  }
};

// Mode-specific ranking over entries, ignoring WRR credits: negative when a
// outranks b, 0 when they tie on every key of the mode.
int rank_compare(const RequestTableEntry& a, const RequestTableEntry& b,
                 const PolicyConfig& policy);

// Deficit-style pick among entries tied on every sort key: highest credit
// first, then earliest reservation arrival, then (station, media).
// Returns the index of the chosen candidate.
std::size_t wrr_pick(const std::vector<const RequestTableEntry*>& tied);

// The per-frame grant computation. Entries failing the CSI gate are excluded
// (amapmt mode only); the rest are ranked per mode and slots are assigned
// down the ranked list. Each tie group shares a budget of
// group_size * ceil(data_slots / active_entries) slots: one guarantee slot
// per member first, the remainder by WRR credit. Unassigned slots stay idle.
// Mutates only the entries' wrr_credit fields.
GrantDecision serve_queue(std::vector<RequestTableEntry>& table,
                          const FrameLayout& layout, const PolicyConfig& policy,
                          SimTime now);

}  // namespace amapsim
