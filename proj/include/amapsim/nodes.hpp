#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "amapsim/metrics.hpp"
#include "amapsim/packets.hpp"
#include "amapsim/scheduler.hpp"

namespace amapsim {

// Request-access state of one (station, media) source.
enum class RaState : std::uint8_t {
  Idle,        // no data, or reservation released
  Contending,  // an RA attempt is scheduled on the random-access channel
  Resident,    // the base station holds a table entry for this source
};

struct SourceRaState {
  RaState state = RaState::Idle;
  int attempt = 0;                 // RA transmissions made in this contention
  std::int64_t next_minislot = -1; // global minislot index of the next attempt
};

// A source station: per-media FIFO queues under one shared buffer, plus the
// contention state machine per media. Packet loss happens here (overflow on
// admission, staleness at the sweeps) and is reported to the collector.
class SourceStation {
 public:
  SourceStation(int id, int mobile, std::int64_t buffer_capacity, double ber,
                DropCause expiry_cause);

  // Whole-transaction admission: either every packet fits under the buffer
  // capacity or the entire transaction is dropped as overflow.
  bool enqueue_transaction(const Transaction& txn,
                           std::vector<DataPacket>&& packets, SimTime now,
                           Collector& metrics);

  struct SweepResult {
    std::int64_t packets = 0;
    std::int64_t bytes = 0;
  };

  // Drops every queued packet of the media whose deadline is <= t. A packet
  // expired exactly at its deadline counts as stale.
  SweepResult sweep(MediaClass media, SimTime t, Collector& metrics);
  SweepResult sweep_all(SimTime t, Collector& metrics);

  // Serves a grant: sweeps against the delivery completion time, then
  // transmits the head-of-line packet with the piggyback bit telling the
  // base station whether more data waits. Empty queue -> the slot is wasted
  // and nothing is returned.
  std::optional<DataPacket> on_grant(MediaClass media, SimTime delivery_time,
                                     Collector& metrics);

  // Grant broadcast heard at frame start: proof the base station holds our
  // entry, so any concurrent contention is abandoned.
  void on_grant_broadcast(MediaClass media);

  // The base station dropped our reservation (deadline passed). Signalled on
  // the error-free downlink together with ACKs and grants.
  void on_reservation_purged(MediaClass media);

  void begin_contention(MediaClass media, std::int64_t minislot);
  void on_ra_collision(MediaClass media, std::int64_t next_minislot);
  void on_ra_acknowledged(MediaClass media);

  const SourceRaState& ra(MediaClass media) const {
    return ra_[static_cast<std::size_t>(media)];
  }
  int queue_len(MediaClass media) const {
    return static_cast<int>(queues_[static_cast<std::size_t>(media)].size());
  }
  SimTime earliest_deadline(MediaClass media) const;
  std::int64_t buffered_bytes() const { return buffered_bytes_; }
  std::int64_t capacity() const { return capacity_; }
  int id() const { return id_; }
  int mobile() const { return mobile_; }
  double ber() const { return ber_; }

 private:
  std::deque<DataPacket>& queue(MediaClass m) {
    return queues_[static_cast<std::size_t>(m)];
  }
  SourceRaState& ra_mut(MediaClass m) { return ra_[static_cast<std::size_t>(m)]; }

  int id_;
  int mobile_;
  std::int64_t capacity_;
  double ber_;
  DropCause expiry_cause_;  // Ttl normally, CsiDenied behind a closed gate
  std::int64_t buffered_bytes_ = 0;
  std::array<std::deque<DataPacket>, kMediaClassCount> queues_;
  std::array<SourceRaState, kMediaClassCount> ra_;
};

// Mobiles relay between their stations and the base station. Queues are
// unbounded and order-preserving; the relay itself adds only the configured
// forwarding delay, which the simulation applies when scheduling.
struct Mobile {
  int id = 0;
  std::vector<int> stations;
};

struct PurgedEntry {
  int station = 0;
  MediaClass media = MediaClass::Voice;
  int pending = 0;
};

// The base station's request table and its maintenance rules.
class BaseStation {
 public:
  // ACKs the request and creates or refreshes the (station, media) entry.
  // A refresh accumulates pending work and keeps the earliest deadline.
  void on_ra(const RequestAccessPacket& ra, SimTime now);

  // Bookkeeping for one received uplink packet. Returns true when the entry
  // was released (piggyback off and no pending work left).
  bool on_data(const DataPacket& packet, SimTime now);

  // Removes entries whose deadline has passed. The packets behind them are
  // accounted by the station-side sweep; here we only clear the table.
  std::vector<PurgedEntry> ttl_sweep(SimTime now);

  std::vector<RequestTableEntry>& table() { return table_; }
  const std::vector<RequestTableEntry>& table() const { return table_; }
  const RequestTableEntry* find(int station, MediaClass media) const;

  std::int64_t ra_received = 0;
  std::int64_t ra_refreshes = 0;
  std::int64_t entries_purged = 0;

 private:
  RequestTableEntry* find_mut(int station, MediaClass media);
  std::vector<RequestTableEntry> table_;
};

}  // namespace amapsim
