#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "amapsim/packets.hpp"

namespace amapsim {

enum class DropCause : std::uint8_t { Overflow, Ttl, CsiDenied, Corrupted };
constexpr int kDropCauseCount = 4;

const char* drop_cause_name(DropCause c);

struct ClassCounters {
  std::int64_t offered_pkts = 0;
  std::int64_t offered_bytes = 0;
  std::int64_t delivered_pkts = 0;
  std::int64_t delivered_bytes = 0;
  std::array<std::int64_t, kDropCauseCount> dropped_pkts = {0, 0, 0, 0};
  std::array<std::int64_t, kDropCauseCount> dropped_bytes = {0, 0, 0, 0};
  std::int64_t wasted_slots = 0;
  std::int64_t delay_sum_us = 0;  // over delivered packets
  std::int64_t txns_offered = 0;
  std::int64_t txns_lost = 0;     // any packet of the transaction lost
  std::int64_t in_flight_pkts = 0;  // queued or mid-slot at the horizon

  std::int64_t dropped(DropCause c) const {
    return dropped_pkts[static_cast<std::size_t>(c)];
  }
  std::int64_t total_dropped() const {
    std::int64_t t = 0;
    for (auto v : dropped_pkts) t += v;
    return t;
  }
};

struct ClassReport {
  ClassCounters counters;
  std::optional<double> plr;      // absent when nothing was offered
  std::optional<double> mptd_us;  // absent when nothing was delivered
  double throughput_bps = 0.0;
  double rho = 0.0;
};

struct MetricsReport {
  std::array<ClassReport, kMediaClassCount> per_class;
  ClassReport aggregate;
  SimTime horizon = 0;
  std::int64_t link_rate_bps = 0;
  std::int64_t late_deliveries = 0;  // packets delivered past their deadline

  const ClassReport& for_class(MediaClass m) const {
    return per_class[static_cast<std::size_t>(m)];
  }
};

// Journal entry for replaying a run's accounting from its event log.
struct MetricsRecord {
  enum class Kind : std::uint8_t { Offered, Dropped, Delivered, WastedSlot };
  Kind kind = Kind::Offered;
  MediaClass media = MediaClass::Voice;
  DropCause cause = DropCause::Overflow;
  std::int64_t pkts = 0;
  std::int64_t bytes = 0;
  SimTime created = 0;
  SimTime event_time = 0;
};

// Event-sourced accounting. Exactly one terminal fate per packet (delivered
// or dropped with a cause); recording a second fate for the same packet id
// halts the run. The collector also tracks live queue occupancy so the
// conservation identity can be audited at every frame boundary:
//   offered == delivered + drops + queued + mid-slot, per class.
class Collector {
 public:
  explicit Collector(bool journal = false) : journal_enabled_(journal) {}

  void transaction_generated(const Transaction& txn, std::int64_t packet_count);
  void packet_enqueued(const DataPacket& p);
  void packet_dropped(const DataPacket& p, DropCause cause, SimTime now);
  void packet_transmitted(const DataPacket& p);
  void packet_delivered(const DataPacket& p, SimTime delivered_at);
  void packet_corrupted(const DataPacket& p, SimTime now);
  void wasted_slot(MediaClass media);

  // Throws std::logic_error when the conservation identity is violated.
  void check_conservation() const;

  MetricsReport finalize(SimTime horizon, std::int64_t link_rate_bps) const;

  std::int64_t late_deliveries() const { return late_deliveries_; }
  std::int64_t queued_pkts(MediaClass m) const {
    return queued_[static_cast<std::size_t>(m)];
  }
  const std::vector<MetricsRecord>& journal() const { return journal_; }

  // Rebuilds a report from a journal alone.
  static MetricsReport replay(const std::vector<MetricsRecord>& journal,
                              SimTime horizon, std::int64_t link_rate_bps);

 private:
  ClassCounters& counters(MediaClass m) { return classes_[static_cast<std::size_t>(m)]; }
  void mark_fate(const DataPacket& p);
  void mark_txn_lost(const DataPacket& p);

  std::array<ClassCounters, kMediaClassCount> classes_;
  std::array<std::int64_t, kMediaClassCount> queued_ = {0, 0, 0, 0, 0};
  std::array<std::int64_t, kMediaClassCount> mid_slot_ = {0, 0, 0, 0, 0};
  std::unordered_set<std::uint64_t> fates_;
  std::unordered_set<std::uint64_t> lost_txns_;
  std::int64_t late_deliveries_ = 0;
  bool journal_enabled_ = false;
  std::vector<MetricsRecord> journal_;
};

// Sums counters across runs (for multi-seed pooling) and rederives the
// ratio metrics from the summed counters.
MetricsReport merge_reports(const std::vector<MetricsReport>& reports);

}  // namespace amapsim
