#include "amapsim/metrics.hpp"

#include <stdexcept>
#include <string>

namespace amapsim {

const char* drop_cause_name(DropCause c) {
  switch (c) {
    case DropCause::Overflow: return "overflow";
    case DropCause::Ttl: return "ttl";
    case DropCause::CsiDenied: return "csi-denied";
    case DropCause::Corrupted: return "corrupted";
  }
  return "?";
}

void Collector::mark_fate(const DataPacket& p) {
  if (!fates_.insert(packet_id(p)).second) {
    throw std::logic_error("packet fate recorded twice: txn=" +
                           std::to_string(p.txn_id) + " seq=" +
                           std::to_string(p.seq_index));
  }
}

void Collector::mark_txn_lost(const DataPacket& p) {
  if (lost_txns_.insert(p.txn_id).second) {
    counters(p.media).txns_lost += 1;
  }
}

void Collector::transaction_generated(const Transaction& txn,
                                      std::int64_t packet_count) {
  ClassCounters& c = counters(txn.media);
  c.offered_pkts += packet_count;
  c.offered_bytes += txn.size_bytes;
  c.txns_offered += 1;
  if (journal_enabled_) {
    journal_.push_back({MetricsRecord::Kind::Offered, txn.media,
                        DropCause::Overflow, packet_count, txn.size_bytes,
                        txn.created, txn.created});
  }
}

void Collector::packet_enqueued(const DataPacket& p) {
  queued_[static_cast<std::size_t>(p.media)] += 1;
}

void Collector::packet_dropped(const DataPacket& p, DropCause cause, SimTime now) {
  mark_fate(p);
  mark_txn_lost(p);
  ClassCounters& c = counters(p.media);
  c.dropped_pkts[static_cast<std::size_t>(cause)] += 1;
  c.dropped_bytes[static_cast<std::size_t>(cause)] += p.payload_bytes;
  switch (cause) {
    case DropCause::Overflow:
      break;  // never entered a queue
    case DropCause::Ttl:
    case DropCause::CsiDenied:
      queued_[static_cast<std::size_t>(p.media)] -= 1;
      break;
    case DropCause::Corrupted:
      mid_slot_[static_cast<std::size_t>(p.media)] -= 1;
      break;
  }
  if (journal_enabled_) {
    journal_.push_back({MetricsRecord::Kind::Dropped, p.media, cause, 1,
                        p.payload_bytes, p.created, now});
  }
}

void Collector::packet_transmitted(const DataPacket& p) {
  queued_[static_cast<std::size_t>(p.media)] -= 1;
  mid_slot_[static_cast<std::size_t>(p.media)] += 1;
}

void Collector::packet_delivered(const DataPacket& p, SimTime delivered_at) {
  mark_fate(p);
  ClassCounters& c = counters(p.media);
  c.delivered_pkts += 1;
  c.delivered_bytes += p.payload_bytes;
  c.delay_sum_us += delivered_at - p.created;
  mid_slot_[static_cast<std::size_t>(p.media)] -= 1;
  if (delivered_at > p.deadline) late_deliveries_ += 1;
  if (journal_enabled_) {
    journal_.push_back({MetricsRecord::Kind::Delivered, p.media,
                        DropCause::Overflow, 1, p.payload_bytes, p.created,
                        delivered_at});
  }
}

void Collector::packet_corrupted(const DataPacket& p, SimTime now) {
  packet_dropped(p, DropCause::Corrupted, now);
}

void Collector::wasted_slot(MediaClass media) {
  counters(media).wasted_slots += 1;
  if (journal_enabled_) {
    journal_.push_back({MetricsRecord::Kind::WastedSlot, media,
                        DropCause::Overflow, 0, 0, 0, 0});
  }
}

void Collector::check_conservation() const {
  for (std::size_t i = 0; i < kMediaClassCount; ++i) {
    const ClassCounters& c = classes_[i];
    const std::int64_t accounted =
        c.delivered_pkts + c.total_dropped() + queued_[i] + mid_slot_[i];
    if (accounted != c.offered_pkts) {
      throw std::logic_error(
          std::string("conservation violated for ") +
          media_name(static_cast<MediaClass>(i)) + ": offered=" +
          std::to_string(c.offered_pkts) + " accounted=" +
          std::to_string(accounted));
    }
  }
}

namespace {

ClassReport derive(const ClassCounters& c, SimTime horizon,
                   std::int64_t link_rate_bps) {
  ClassReport r;
  r.counters = c;
  if (c.offered_pkts > 0) {
    // In-flight packets at the horizon are excluded from both sides of the
    // loss ratio; they are reported separately.
    const std::int64_t resolved = c.offered_pkts - c.in_flight_pkts;
    if (resolved > 0) {
      r.plr = static_cast<double>(c.total_dropped()) / static_cast<double>(resolved);
    }
  }
  if (c.delivered_pkts > 0) {
    r.mptd_us = static_cast<double>(c.delay_sum_us) /
                static_cast<double>(c.delivered_pkts);
  }
  const double seconds = static_cast<double>(horizon) / kTicksPerSecond;
  if (seconds > 0) {
    r.throughput_bps = 8.0 * static_cast<double>(c.delivered_bytes) / seconds;
    if (link_rate_bps > 0) {
      r.rho = 8.0 * static_cast<double>(c.offered_bytes) / seconds /
              static_cast<double>(link_rate_bps);
    }
  }
  return r;
}

ClassCounters sum_counters(const std::array<ClassCounters, kMediaClassCount>& classes) {
  ClassCounters total;
  for (const ClassCounters& c : classes) {
    total.offered_pkts += c.offered_pkts;
    total.offered_bytes += c.offered_bytes;
    total.delivered_pkts += c.delivered_pkts;
    total.delivered_bytes += c.delivered_bytes;
    for (std::size_t k = 0; k < kDropCauseCount; ++k) {
      total.dropped_pkts[k] += c.dropped_pkts[k];
      total.dropped_bytes[k] += c.dropped_bytes[k];
    }
    total.wasted_slots += c.wasted_slots;
    total.delay_sum_us += c.delay_sum_us;
    total.txns_offered += c.txns_offered;
    total.txns_lost += c.txns_lost;
    total.in_flight_pkts += c.in_flight_pkts;
  }
  return total;
}

}  // namespace

MetricsReport Collector::finalize(SimTime horizon,
                                  std::int64_t link_rate_bps) const {
  check_conservation();
  MetricsReport report;
  report.horizon = horizon;
  report.link_rate_bps = link_rate_bps;
  report.late_deliveries = late_deliveries_;
  std::array<ClassCounters, kMediaClassCount> closed = classes_;
  for (std::size_t i = 0; i < kMediaClassCount; ++i) {
    closed[i].in_flight_pkts = queued_[i] + mid_slot_[i];
    report.per_class[i] = derive(closed[i], horizon, link_rate_bps);
  }
  report.aggregate = derive(sum_counters(closed), horizon, link_rate_bps);
  return report;
}

MetricsReport Collector::replay(const std::vector<MetricsRecord>& journal,
                                SimTime horizon, std::int64_t link_rate_bps) {
  std::array<ClassCounters, kMediaClassCount> classes;
  for (const MetricsRecord& rec : journal) {
    ClassCounters& c = classes[static_cast<std::size_t>(rec.media)];
    switch (rec.kind) {
      case MetricsRecord::Kind::Offered:
        c.offered_pkts += rec.pkts;
        c.offered_bytes += rec.bytes;
        c.txns_offered += 1;
        break;
      case MetricsRecord::Kind::Dropped:
        c.dropped_pkts[static_cast<std::size_t>(rec.cause)] += rec.pkts;
        c.dropped_bytes[static_cast<std::size_t>(rec.cause)] += rec.bytes;
        break;
      case MetricsRecord::Kind::Delivered:
        c.delivered_pkts += rec.pkts;
        c.delivered_bytes += rec.bytes;
        c.delay_sum_us += (rec.event_time - rec.created) * rec.pkts;
        break;
      case MetricsRecord::Kind::WastedSlot:
        c.wasted_slots += 1;
        break;
    }
  }
  // Transaction-loss and in-flight detail are not carried by the journal;
  // everything the delimited report prints is reconstructed here.
  MetricsReport report;
  report.horizon = horizon;
  report.link_rate_bps = link_rate_bps;
  for (std::size_t i = 0; i < kMediaClassCount; ++i) {
    classes[i].in_flight_pkts = classes[i].offered_pkts -
                                classes[i].delivered_pkts -
                                classes[i].total_dropped();
    report.per_class[i] = derive(classes[i], horizon, link_rate_bps);
  }
  report.aggregate = derive(sum_counters(classes), horizon, link_rate_bps);
  return report;
}

MetricsReport merge_reports(const std::vector<MetricsReport>& reports) {
  MetricsReport merged;
  if (reports.empty()) return merged;
  merged.link_rate_bps = reports.front().link_rate_bps;
  std::array<ClassCounters, kMediaClassCount> classes;
  for (const MetricsReport& r : reports) {
    merged.horizon += r.horizon;
    merged.late_deliveries += r.late_deliveries;
    for (std::size_t i = 0; i < kMediaClassCount; ++i) {
      const ClassCounters& c = r.per_class[i].counters;
      ClassCounters& t = classes[i];
      t.offered_pkts += c.offered_pkts;
      t.offered_bytes += c.offered_bytes;
      t.delivered_pkts += c.delivered_pkts;
      t.delivered_bytes += c.delivered_bytes;
      for (std::size_t k = 0; k < kDropCauseCount; ++k) {
        t.dropped_pkts[k] += c.dropped_pkts[k];
        t.dropped_bytes[k] += c.dropped_bytes[k];
      }
      t.wasted_slots += c.wasted_slots;
      t.delay_sum_us += c.delay_sum_us;
      t.txns_offered += c.txns_offered;
      t.txns_lost += c.txns_lost;
      t.in_flight_pkts += c.in_flight_pkts;
    }
  }
  for (std::size_t i = 0; i < kMediaClassCount; ++i) {
    merged.per_class[i] = derive(classes[i], merged.horizon, merged.link_rate_bps);
  }
  merged.aggregate = derive(sum_counters(classes), merged.horizon, merged.link_rate_bps);
  return merged;
}

}  // namespace amapsim
