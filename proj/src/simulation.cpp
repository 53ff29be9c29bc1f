#include "amapsim/simulation.hpp"

#include <algorithm>

#include "amapsim/traffic.hpp"

namespace amapsim {

namespace {

constexpr std::uint64_t kArrivalStreamBase = 100;
constexpr std::uint64_t kBackoffStreamBase = 100'000;
constexpr std::uint64_t kChannelStreamBase = 200'000;

}  // namespace

Simulation::Simulation(const Scenario& scenario, PolicyMode mode,
                       std::uint64_t seed, Options options)
    : scenario_(scenario),
      policy_(build_policy(scenario, mode)),
      layout_(build_layout(scenario)),
      horizon_(scenario.horizon()),
      options_(options),
      metrics_(options.journal) {
  profiles_ = build_profiles(scenario_);

  const int stations = scenario_.station_count();
  stations_.reserve(static_cast<std::size_t>(stations));
  for (int st = 0; st < stations; ++st) {
    const double ber = scenario_.ber_for(st);
    const bool gate_denied =
        policy_.mode == PolicyMode::Amapmt && ber > policy_.csi_gate_ber;
    stations_.emplace_back(st, scenario_.mobile_of(st),
                           scenario_.station_buffer_bytes, ber,
                           gate_denied ? DropCause::CsiDenied : DropCause::Ttl);
  }
  mobiles_.resize(static_cast<std::size_t>(scenario_.mobiles));
  for (int m = 0; m < scenario_.mobiles; ++m) {
    mobiles_[static_cast<std::size_t>(m)].id = m;
  }
  for (int st = 0; st < stations; ++st) {
    mobiles_[static_cast<std::size_t>(scenario_.mobile_of(st))].stations.push_back(st);
  }
  bs_node_id_ = stations + scenario_.mobiles;

  arrival_rng_.reserve(profiles_.size());
  backoff_rng_.reserve(profiles_.size());
  for (std::size_t i = 0; i < profiles_.size(); ++i) {
    arrival_rng_.emplace_back(seed, kArrivalStreamBase + i);
    backoff_rng_.emplace_back(seed, kBackoffStreamBase + i);
  }
  channel_rng_.reserve(static_cast<std::size_t>(stations));
  for (int st = 0; st < stations; ++st) {
    channel_rng_.emplace_back(seed, kChannelStreamBase + static_cast<std::uint64_t>(st));
  }

  queue_.schedule({0, 0, bs_node_id_, EventKind::TtlSweep, std::monostate{}});
  queue_.schedule({0, 0, bs_node_id_, EventKind::FrameBoundary, std::monostate{}});
  for (std::size_t i = 0; i < profiles_.size(); ++i) {
    const SimTime offset = initial_arrival_offset(profiles_[i], arrival_rng_[i]);
    queue_.schedule({offset, 0, profiles_[i].station, EventKind::Arrival,
                     ArrivalPayload{static_cast<int>(i)}});
  }
}

MetricsReport Simulation::run() {
  queue_.run_until(horizon_, [this](const Event& ev) { dispatch(ev); });
  return metrics_.finalize(horizon_, scenario_.link_rate_bps);
}

void Simulation::dispatch(const Event& ev) {
  if (options_.trace != nullptr) {
    (*options_.trace) << ev.due << ',' << ev.seq << ',' << ev.target << ','
                      << event_kind_name(ev.kind) << '\n';
  }
  switch (ev.kind) {
    case EventKind::Arrival:
      on_arrival(std::get<ArrivalPayload>(ev.payload).source_index);
      break;
    case EventKind::RaSlot:
      if (const auto* fwd = std::get_if<RaForwardPayload>(&ev.payload)) {
        on_ra_forward(fwd->ra);
      } else {
        on_ra_minislot(std::get<RaSlotPayload>(ev.payload).minislot_index);
      }
      break;
    case EventKind::FrameBoundary:
      on_frame_boundary();
      break;
    case EventKind::TtlSweep:
      on_ttl_sweep();
      break;
    case EventKind::SlotStart:
      on_slot_start(std::get<SlotStartPayload>(ev.payload));
      break;
    case EventKind::PacketDelivered:
      on_delivery(std::get<DeliveryPayload>(ev.payload));
      break;
  }
}

std::int64_t Simulation::next_minislot_at(SimTime t) const {
  const SimTime frame = layout_.frame_duration();
  const SimTime mini = layout_.minislot_duration;
  const std::int64_t f = t / frame;
  const SimTime offset = t - f * frame;
  const std::int64_t k = (offset + mini - 1) / mini;
  if (k >= layout_.ra_minislots) return (f + 1) * layout_.ra_minislots;
  return f * layout_.ra_minislots + k;
}

void Simulation::start_contention_if_idle(int station, MediaClass media) {
  SourceStation& st = stations_[static_cast<std::size_t>(station)];
  if (st.ra(media).state == RaState::Idle && st.queue_len(media) > 0) {
    st.begin_contention(media, next_minislot_at(queue_.now()));
  }
}

void Simulation::on_arrival(int source_index) {
  const SourceProfile& profile = profiles_[static_cast<std::size_t>(source_index)];
  RngStream& rng = arrival_rng_[static_cast<std::size_t>(source_index)];
  const SimTime now = queue_.now();

  const Transaction txn = make_transaction(profile, next_txn_id_++, now, rng);
  std::vector<DataPacket> packets = packetize(txn, scenario_.cell_bytes);
  metrics_.transaction_generated(txn, static_cast<std::int64_t>(packets.size()));
  if (options_.log_transactions) txn_log_.push_back(txn);

  SourceStation& st = stations_[static_cast<std::size_t>(profile.station)];
  st.enqueue_transaction(txn, std::move(packets), now, metrics_);
  start_contention_if_idle(profile.station, profile.media);

  queue_.schedule({now + next_arrival(profile, rng), 0, profile.station,
                   EventKind::Arrival, ArrivalPayload{source_index}});
}

void Simulation::on_ra_minislot(std::int64_t minislot_index) {
  const SimTime now = queue_.now();

  std::vector<RaContender> contenders;
  for (std::size_t i = 0; i < profiles_.size(); ++i) {
    const SourceProfile& profile = profiles_[i];
    SourceStation& st = stations_[static_cast<std::size_t>(profile.station)];
    const SourceRaState& ra = st.ra(profile.media);
    if (ra.state != RaState::Contending || ra.next_minislot != minislot_index) {
      continue;
    }
    st.sweep(profile.media, now, metrics_);  // may abandon the contention
    if (st.ra(profile.media).state == RaState::Contending &&
        st.queue_len(profile.media) > 0) {
      contenders.push_back({profile.station, profile.media});
    }
  }

  const RaOutcome outcome = ra_minislot_resolve(std::move(contenders));
  switch (outcome.kind) {
    case RaOutcome::Kind::Idle:
      return;
    case RaOutcome::Kind::Success: {
      const RaContender& w = outcome.winner;
      SourceStation& st = stations_[static_cast<std::size_t>(w.station)];
      const SourceProfile& profile =
          profiles_[static_cast<std::size_t>(source_index(w.station, w.media))];

      RequestAccessPacket ra;
      ra.source_station = w.station;
      ra.dest_mobile = st.mobile();
      ra.media = w.media;
      ra.bit_rate_bps = scenario_.params(w.media).bytes_per_s * 8;
      ra.ttl_deadline = st.earliest_deadline(w.media);
      ra.csi_ber = st.ber();
      ra.qos_priority = profile.priority;
      ra.pending_packets = st.queue_len(w.media);

      // The mobile relays the request to the base station; the ACK returns on
      // the error-free downlink, which stops this source's contention.
      st.on_ra_acknowledged(w.media);
      if (scenario_.forward_delay == 0) {
        on_ra_forward(ra);
      } else {
        queue_.schedule({now + scenario_.forward_delay, 0, bs_node_id_,
                         EventKind::RaSlot, RaForwardPayload{ra}});
      }
      return;
    }
    case RaOutcome::Kind::Collision: {
      for (const RaContender& c : outcome.contenders) {
        SourceStation& st = stations_[static_cast<std::size_t>(c.station)];
        const int src = source_index(c.station, c.media);
        const int attempt = st.ra(c.media).attempt;
        const int wait =
            backoff_delay(attempt, backoff_rng_[static_cast<std::size_t>(src)]);
        st.on_ra_collision(c.media, minislot_index + 1 + wait);
      }
      return;
    }
  }
}

void Simulation::on_ra_forward(const RequestAccessPacket& ra) {
  bs_.on_ra(ra, queue_.now());
}

void Simulation::on_ttl_sweep() {
  const SimTime now = queue_.now();
  for (SourceStation& st : stations_) {
    st.sweep_all(now, metrics_);
  }
  const std::vector<PurgedEntry> purged = bs_.ttl_sweep(now);
  for (const PurgedEntry& p : purged) {
    SourceStation& st = stations_[static_cast<std::size_t>(p.station)];
    st.on_reservation_purged(p.media);
    start_contention_if_idle(p.station, p.media);
  }
}

void Simulation::on_frame_boundary() {
  const SimTime now = queue_.now();

  GrantDecision decision = serve_queue(bs_.table(), layout_, policy_, now);

  if (options_.log_grants) {
    FrameGrantLog log;
    log.frame_start = now;
    for (const RequestTableEntry& e : bs_.table()) {
      GrantCandidate c;
      c.station = e.station;
      c.media = e.media;
      c.deadline = e.deadline;
      c.ber = e.ber;
      c.demand = entry_demand(e);
      c.gate_pass = policy_.mode != PolicyMode::Amapmt ||
                    csi_gate_pass(e, policy_.csi_gate_ber);
      for (const GrantAssignment& a : decision.assignments) {
        if (a.station == e.station && a.media == e.media) c.granted += 1;
      }
      log.candidates.push_back(c);
    }
    frame_log_.push_back(std::move(log));
  }

  for (const GrantAssignment& a : decision.assignments) {
    stations_[static_cast<std::size_t>(a.station)].on_grant_broadcast(a.media);
    queue_.schedule({layout_.data_slot_start(now, a.slot_index), 0, a.station,
                     EventKind::SlotStart,
                     SlotStartPayload{a.slot_index, a.station, a.media}});
  }

  for (int k = 0; k < layout_.ra_minislots; ++k) {
    queue_.schedule({layout_.minislot_end(now, k), 0, bs_node_id_,
                     EventKind::RaSlot,
                     RaSlotPayload{frame_index_ * layout_.ra_minislots + k}});
  }

  frame_index_ += 1;
  const SimTime next = now + layout_.frame_duration();
  queue_.schedule({next, 0, bs_node_id_, EventKind::TtlSweep, std::monostate{}});
  queue_.schedule({next, 0, bs_node_id_, EventKind::FrameBoundary, std::monostate{}});

  metrics_.check_conservation();
}

void Simulation::on_slot_start(const SlotStartPayload& p) {
  const SimTime now = queue_.now();
  const SimTime delivery_time = now + layout_.slot_duration;
  SourceStation& st = stations_[static_cast<std::size_t>(p.station)];

  std::optional<DataPacket> pkt = st.on_grant(p.media, delivery_time, metrics_);
  if (!pkt.has_value()) {
    metrics_.wasted_slot(p.media);
    return;
  }
  metrics_.packet_transmitted(*pkt);
  const TxResult result =
      transmit(*pkt, ChannelState{st.ber()},
               channel_rng_[static_cast<std::size_t>(p.station)]);
  queue_.schedule({now, 0, bs_node_id_, EventKind::PacketDelivered,
                   DeliveryPayload{*pkt, result == TxResult::Corrupted,
                                   delivery_time, st.queue_len(p.media)}});
}

void Simulation::on_delivery(const DeliveryPayload& p) {
  if (p.corrupted) {
    // The base station cannot parse a corrupted packet, so the table entry
    // keeps its stale pending count until the sweep clears it.
    metrics_.packet_corrupted(p.packet, p.delivery_time);
    return;
  }
  if (p.delivery_time > horizon_) {
    return;  // still on the air when the run ends; reported as in-flight
  }
  bs_.on_data(p.packet, p.delivery_time);
  metrics_.packet_delivered(p.packet, p.delivery_time);
  if (options_.log_deliveries) {
    deliveries_.push_back({p.packet, p.delivery_time - layout_.slot_duration,
                           p.delivery_time, p.sender_queue_after});
  }
}

}  // namespace amapsim
