#include "amapsim/nodes.hpp"

#include <algorithm>

namespace amapsim {

SourceStation::SourceStation(int id, int mobile, std::int64_t buffer_capacity,
                             double ber, DropCause expiry_cause)
    : id_(id),
      mobile_(mobile),
      capacity_(buffer_capacity),
      ber_(ber),
      expiry_cause_(expiry_cause) {}

bool SourceStation::enqueue_transaction(const Transaction& txn,
                                        std::vector<DataPacket>&& packets,
                                        SimTime now, Collector& metrics) {
  sweep(txn.media, now, metrics);
  if (buffered_bytes_ + txn.size_bytes > capacity_) {
    for (const DataPacket& p : packets) {
      metrics.packet_dropped(p, DropCause::Overflow, now);
    }
    return false;
  }
  auto& q = queue(txn.media);
  for (DataPacket& p : packets) {
    buffered_bytes_ += p.payload_bytes;
    metrics.packet_enqueued(p);
    q.push_back(std::move(p));
  }
  return true;
}

SourceStation::SweepResult SourceStation::sweep(MediaClass media, SimTime t,
                                                Collector& metrics) {
  SweepResult result;
  auto& q = queue(media);
  for (auto it = q.begin(); it != q.end();) {
    if (it->deadline <= t) {
      result.packets += 1;
      result.bytes += it->payload_bytes;
      buffered_bytes_ -= it->payload_bytes;
      metrics.packet_dropped(*it, expiry_cause_, t);
      it = q.erase(it);
    } else {
      ++it;
    }
  }
  // A contention with nothing left to send is abandoned.
  if (q.empty() && ra_mut(media).state == RaState::Contending) {
    ra_mut(media) = SourceRaState{};
  }
  return result;
}

SourceStation::SweepResult SourceStation::sweep_all(SimTime t, Collector& metrics) {
  SweepResult total;
  for (MediaClass m : kAllMediaClasses) {
    const SweepResult r = sweep(m, t, metrics);
    total.packets += r.packets;
    total.bytes += r.bytes;
  }
  return total;
}

std::optional<DataPacket> SourceStation::on_grant(MediaClass media,
                                                  SimTime delivery_time,
                                                  Collector& metrics) {
  // Anything that cannot reach the base station by its deadline is dropped
  // before it burns the slot.
  sweep(media, delivery_time, metrics);
  auto& q = queue(media);
  if (q.empty()) return std::nullopt;

  DataPacket pkt = std::move(q.front());
  q.pop_front();
  buffered_bytes_ -= pkt.payload_bytes;
  pkt.pgbk = !q.empty();

  SourceRaState& ra = ra_mut(media);
  if (ra.state == RaState::Contending) ra = SourceRaState{};
  if (pkt.pgbk) {
    ra.state = RaState::Resident;
  } else {
    // Final packet: the base station will release the reservation.
    ra = SourceRaState{};
  }
  return pkt;
}

void SourceStation::on_grant_broadcast(MediaClass media) {
  SourceRaState& ra = ra_mut(media);
  if (ra.state == RaState::Contending) {
    ra = SourceRaState{};
    ra.state = RaState::Resident;
  }
}

void SourceStation::on_reservation_purged(MediaClass media) {
  SourceRaState& ra = ra_mut(media);
  if (ra.state == RaState::Resident) ra = SourceRaState{};
}

void SourceStation::begin_contention(MediaClass media, std::int64_t minislot) {
  SourceRaState& ra = ra_mut(media);
  ra.state = RaState::Contending;
  ra.attempt = 1;
  ra.next_minislot = minislot;
}

void SourceStation::on_ra_collision(MediaClass media, std::int64_t next_minislot) {
  SourceRaState& ra = ra_mut(media);
  ra.attempt += 1;
  ra.next_minislot = next_minislot;
}

void SourceStation::on_ra_acknowledged(MediaClass media) {
  SourceRaState& ra = ra_mut(media);
  ra = SourceRaState{};
  ra.state = RaState::Resident;
}

SimTime SourceStation::earliest_deadline(MediaClass media) const {
  const auto& q = queues_[static_cast<std::size_t>(media)];
  SimTime earliest = 0;
  bool first = true;
  for (const DataPacket& p : q) {
    if (first || p.deadline < earliest) {
      earliest = p.deadline;
      first = false;
    }
  }
  return earliest;
}

void BaseStation::on_ra(const RequestAccessPacket& ra, SimTime now) {
  ra_received += 1;
  if (RequestTableEntry* e = find_mut(ra.source_station, ra.media)) {
    ra_refreshes += 1;
    e->pending += ra.pending_packets;
    e->deadline = std::min(e->deadline, ra.ttl_deadline);
    e->ber = ra.csi_ber;
    return;
  }
  RequestTableEntry e;
  e.station = ra.source_station;
  e.media = ra.media;
  e.priority = ra.qos_priority;
  e.deadline = ra.ttl_deadline;
  e.ber = ra.csi_ber;
  e.pending = ra.pending_packets;
  e.more_expected = false;
  e.ra_arrival = now;
  e.wrr_credit = 0;
  table_.push_back(e);
}

bool BaseStation::on_data(const DataPacket& packet, SimTime now) {
  (void)now;
  RequestTableEntry* e = find_mut(packet.station, packet.media);
  if (e == nullptr) return false;  // reservation already released or purged
  e->pending = std::max(0, e->pending - 1);
  e->more_expected = packet.pgbk;
  // The packet belongs to the head-of-line transaction, so its deadline is
  // the freshest estimate of the source's earliest deadline.
  e->deadline = packet.deadline;
  if (e->pending == 0 && !e->more_expected) {
    table_.erase(table_.begin() + (e - table_.data()));
    return true;
  }
  return false;
}

std::vector<PurgedEntry> BaseStation::ttl_sweep(SimTime now) {
  std::vector<PurgedEntry> purged;
  for (auto it = table_.begin(); it != table_.end();) {
    if (it->deadline <= now) {
      purged.push_back({it->station, it->media, it->pending});
      it = table_.erase(it);
    } else {
      ++it;
    }
  }
  entries_purged += static_cast<std::int64_t>(purged.size());
  return purged;
}

const RequestTableEntry* BaseStation::find(int station, MediaClass media) const {
  for (const RequestTableEntry& e : table_) {
    if (e.station == station && e.media == media) return &e;
  }
  return nullptr;
}

RequestTableEntry* BaseStation::find_mut(int station, MediaClass media) {
  for (RequestTableEntry& e : table_) {
    if (e.station == station && e.media == media) return &e;
  }
  return nullptr;
}

}  // namespace amapsim
