#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "amapsim/nodes.hpp"
#include "amapsim/rng.hpp"
#include "amapsim/traffic.hpp"

using namespace amapsim;

namespace {

constexpr std::int64_t kCapacity = 524'288;

Transaction txn_of(std::uint64_t id, int station, MediaClass media,
                   std::int64_t size, SimTime created, SimTime deadline) {
  Transaction t;
  t.id = id;
  t.station = station;
  t.media = media;
  t.size_bytes = size;
  t.created = created;
  t.deadline = deadline;
  return t;
}

bool enqueue(SourceStation& st, Collector& m, const Transaction& t,
             SimTime now = 0) {
  return st.enqueue_transaction(t, packetize(t, 53), now, m);
}

SourceStation make_station(std::int64_t capacity = kCapacity) {
  return SourceStation(0, 0, capacity, 1e-6, DropCause::Ttl);
}

RequestAccessPacket ra_packet(int station, MediaClass media, SimTime deadline,
                              int pending, double ber = 1e-6) {
  RequestAccessPacket ra;
  ra.source_station = station;
  ra.dest_mobile = 0;
  ra.media = media;
  ra.bit_rate_bps = 4000;
  ra.ttl_deadline = deadline;
  ra.csi_ber = ber;
  ra.qos_priority = Priority::numeric(4);
  ra.pending_packets = pending;
  return ra;
}

}  // namespace

TEST_CASE("a 1 KB transaction fits an empty 512 KB buffer") {
  Collector m;
  SourceStation st = make_station();
  const Transaction t = txn_of(1, 0, MediaClass::Data, 1024, 0, from_ms(100));
  m.transaction_generated(t, packet_count_for(1024, 53));
  CHECK(enqueue(st, m, t));
  CHECK(st.buffered_bytes() == 1024);
  CHECK(st.queue_len(MediaClass::Data) == 20);
}

TEST_CASE("admission boundary: exact fit accepted, one byte over dropped") {
  // oracle: direct arithmetic on the occupancy comparison
  Collector m;
  SourceStation st = make_station();
  const Transaction fill =
      txn_of(1, 0, MediaClass::Data, kCapacity - 100, 0, from_ms(1000));
  m.transaction_generated(fill, packet_count_for(fill.size_bytes, 53));
  CHECK(enqueue(st, m, fill));

  // 100 more bytes is an exact fit: buffered + size == capacity -> accepted
  const Transaction exact = txn_of(2, 0, MediaClass::Email, 100, 0, from_ms(1000));
  m.transaction_generated(exact, packet_count_for(100, 53));
  CHECK(enqueue(st, m, exact));
  CHECK(st.buffered_bytes() == kCapacity);

  // anything further overflows and the whole transaction is dropped
  const Transaction over = txn_of(3, 0, MediaClass::Ftp, 1000, 0, from_ms(1000));
  m.transaction_generated(over, packet_count_for(1000, 53));
  CHECK_FALSE(enqueue(st, m, over));
  CHECK(st.queue_len(MediaClass::Ftp) == 0);
  const MetricsReport r = m.finalize(from_seconds(1), 1'544'000);
  CHECK(r.for_class(MediaClass::Ftp).counters.dropped(DropCause::Overflow) ==
        packet_count_for(1000, 53));
}

TEST_CASE("grant transmits head of line with the piggyback bit") {
  Collector m;
  SourceStation st = make_station();
  const Transaction t = txn_of(1, 0, MediaClass::Voice, 106, 0, from_ms(50));
  m.transaction_generated(t, 2);
  CHECK(enqueue(st, m, t));
  REQUIRE(st.queue_len(MediaClass::Voice) == 2);

  // queue length 2 -> pgbk set
  auto first = st.on_grant(MediaClass::Voice, 1000, m);
  REQUIRE(first.has_value());
  CHECK(first->pgbk);
  CHECK(first->seq_index == 0);

  // queue length 1 -> final packet, pgbk clear, reservation released
  auto second = st.on_grant(MediaClass::Voice, 2000, m);
  REQUIRE(second.has_value());
  CHECK_FALSE(second->pgbk);
  CHECK(st.ra(MediaClass::Voice).state == RaState::Idle);
}

TEST_CASE("a queue that expired before its slot wastes the grant") {
  // hand-traced: one 2-packet transaction with deadline 5000; the grant's
  // delivery completes at 6000, after the deadline, so the sweep clears the
  // queue and the slot carries nothing.
  Collector m;
  SourceStation st = make_station();
  const Transaction t = txn_of(1, 0, MediaClass::Video, 106, 0, 5000);
  m.transaction_generated(t, 2);
  CHECK(enqueue(st, m, t));

  auto packet = st.on_grant(MediaClass::Video, 6000, m);
  CHECK_FALSE(packet.has_value());
  CHECK(st.queue_len(MediaClass::Video) == 0);
  const MetricsReport r = m.finalize(from_seconds(1), 1'544'000);
  CHECK(r.for_class(MediaClass::Video).counters.dropped(DropCause::Ttl) == 2);
}

TEST_CASE("expiry sweep: none in the future, boundary at the deadline") {
  Collector m;
  SourceStation st = make_station();
  const Transaction t = txn_of(1, 0, MediaClass::Ftp, 53, 0, 1000);
  m.transaction_generated(t, 1);
  CHECK(enqueue(st, m, t));

  CHECK(st.sweep(MediaClass::Ftp, 999, m).packets == 0);
  CHECK(st.queue_len(MediaClass::Ftp) == 1);
  // expired exactly at the deadline
  CHECK(st.sweep(MediaClass::Ftp, 1000, m).packets == 1);
  CHECK(st.queue_len(MediaClass::Ftp) == 0);
}

TEST_CASE("expiry sweep equals a brute-force filter over mixed deadlines") {
  RngStream rng(17, 0);
  for (int trial = 0; trial < 100; ++trial) {
    Collector m;
    SourceStation st = make_station(1 << 30);
    std::vector<SimTime> deadlines;
    std::uint64_t id = 1;
    for (int t = 0; t < 20; ++t) {
      const SimTime deadline = static_cast<SimTime>(1 + rng.uniform_below(2000));
      const Transaction txn = txn_of(id++, 0, MediaClass::Data, 53, 0, deadline);
      m.transaction_generated(txn, 1);
      CHECK(enqueue(st, m, txn));
      deadlines.push_back(deadline);
    }
    const SimTime cut = static_cast<SimTime>(rng.uniform_below(2200));
    std::int64_t expected = 0;
    for (SimTime d : deadlines) {
      if (d <= cut) ++expected;
    }
    CHECK(st.sweep(MediaClass::Data, cut, m).packets == expected);
    CHECK(st.queue_len(MediaClass::Data) ==
          static_cast<int>(deadlines.size() - static_cast<std::size_t>(expected)));
  }
}

TEST_CASE("request table: new entry, refresh, and frame-time eligibility") {
  BaseStation bs;
  bs.on_ra(ra_packet(3, MediaClass::Video, from_ms(40), 5), 1000);
  REQUIRE(bs.table().size() == 1);
  CHECK(bs.table()[0].pending == 5);
  CHECK(bs.table()[0].ra_arrival == 1000);

  // duplicate for a resident entry accumulates, no new row
  bs.on_ra(ra_packet(3, MediaClass::Video, from_ms(60), 2), 2000);
  REQUIRE(bs.table().size() == 1);
  CHECK(bs.table()[0].pending == 7);
  CHECK(bs.table()[0].deadline == from_ms(40));  // earliest deadline kept
  CHECK(bs.table()[0].ra_arrival == 1000);

  bs.on_ra(ra_packet(4, MediaClass::Email, from_ms(100), 1), 2500);
  CHECK(bs.table().size() == 2);
}

TEST_CASE("data bookkeeping: release on final packet, retain on piggyback") {
  BaseStation bs;
  bs.on_ra(ra_packet(1, MediaClass::Data, from_ms(25), 2), 0);

  DataPacket p;
  p.txn_id = 1;
  p.station = 1;
  p.media = MediaClass::Data;
  p.payload_bytes = 53;
  p.deadline = from_ms(25);

  p.pgbk = true;
  CHECK_FALSE(bs.on_data(p, 500));  // entry retained
  REQUIRE(bs.table().size() == 1);
  CHECK(bs.table()[0].pending == 1);

  p.pgbk = false;
  p.seq_index = 1;
  CHECK(bs.on_data(p, 800));  // pending 0, pgbk off -> released
  CHECK(bs.table().empty());
}

TEST_CASE("corrupted final packet leaves the entry for the sweep to purge") {
  // hand-traced: pending 1, the only packet is corrupted in flight. The base
  // station cannot parse it, so nothing is decremented; the entry lingers
  // until its deadline passes and the sweep removes it.
  BaseStation bs;
  bs.on_ra(ra_packet(2, MediaClass::Ftp, from_ms(20), 1), 0);
  // corruption: on_data never called
  REQUIRE(bs.table().size() == 1);
  CHECK(bs.ttl_sweep(from_ms(19)).empty());
  const auto purged = bs.ttl_sweep(from_ms(20));
  REQUIRE(purged.size() == 1);
  CHECK(purged[0].station == 2);
  CHECK(purged[0].pending == 1);
  CHECK(bs.table().empty());
}

TEST_CASE("ttl sweep removes all expired entries in one pass") {
  BaseStation bs;
  bs.on_ra(ra_packet(0, MediaClass::Voice, 1000, 1), 0);
  bs.on_ra(ra_packet(1, MediaClass::Video, 1000, 1), 0);
  bs.on_ra(ra_packet(2, MediaClass::Email, 5000, 1), 0);
  CHECK(bs.ttl_sweep(500).empty());
  CHECK(bs.ttl_sweep(1000).size() == 2);  // simultaneous expiry
  REQUIRE(bs.table().size() == 1);
  CHECK(bs.table()[0].station == 2);
}

TEST_CASE("contention state machine") {
  Collector m;
  SourceStation st = make_station();
  const Transaction t = txn_of(1, 0, MediaClass::Email, 106, 0, from_ms(200));
  m.transaction_generated(t, 2);
  CHECK(enqueue(st, m, t));
  CHECK(st.ra(MediaClass::Email).state == RaState::Idle);

  st.begin_contention(MediaClass::Email, 4);
  CHECK(st.ra(MediaClass::Email).state == RaState::Contending);
  CHECK(st.ra(MediaClass::Email).attempt == 1);
  CHECK(st.ra(MediaClass::Email).next_minislot == 4);

  st.on_ra_collision(MediaClass::Email, 7);
  CHECK(st.ra(MediaClass::Email).attempt == 2);
  CHECK(st.ra(MediaClass::Email).next_minislot == 7);

  st.on_ra_acknowledged(MediaClass::Email);
  CHECK(st.ra(MediaClass::Email).state == RaState::Resident);

  // purge notice returns the source to idle; data is still queued
  st.on_reservation_purged(MediaClass::Email);
  CHECK(st.ra(MediaClass::Email).state == RaState::Idle);
}

TEST_CASE("grant broadcast converts contention into residency") {
  Collector m;
  SourceStation st = make_station();
  const Transaction t = txn_of(1, 0, MediaClass::Voice, 53, 0, from_ms(200));
  m.transaction_generated(t, 1);
  CHECK(enqueue(st, m, t));
  st.begin_contention(MediaClass::Voice, 2);
  st.on_grant_broadcast(MediaClass::Voice);
  CHECK(st.ra(MediaClass::Voice).state == RaState::Resident);
}

TEST_CASE("per-station buffer is shared across media queues") {
  Collector m;
  SourceStation st = make_station(2000);
  const Transaction a = txn_of(1, 0, MediaClass::Voice, 1500, 0, from_ms(100));
  m.transaction_generated(a, packet_count_for(1500, 53));
  CHECK(enqueue(st, m, a));
  const Transaction b = txn_of(2, 0, MediaClass::Data, 600, 0, from_ms(100));
  m.transaction_generated(b, packet_count_for(600, 53));
  CHECK_FALSE(enqueue(st, m, b));  // 1500 + 600 > 2000
  const Transaction c = txn_of(3, 0, MediaClass::Data, 500, 0, from_ms(100));
  m.transaction_generated(c, packet_count_for(500, 53));
  CHECK(enqueue(st, m, c));  // 1500 + 500 fits exactly
}
