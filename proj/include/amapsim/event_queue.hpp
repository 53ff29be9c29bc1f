#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <variant>
#include <vector>

#include "amapsim/packets.hpp"
#include "amapsim/sim_time.hpp"

namespace amapsim {

enum class EventKind : std::uint8_t {
  Arrival,          // a source generates its next transaction
  RaSlot,           // end of a request-access minislot (or delayed RA delivery)
  FrameBoundary,    // grant computation and frame bookkeeping
  SlotStart,        // a granted data slot begins
  PacketDelivered,  // uplink packet reaches the base station
  TtlSweep,         // stale-packet purge at stations and base station
};

const char* event_kind_name(EventKind k);

struct ArrivalPayload {
  int source_index = 0;
};

struct RaSlotPayload {
  std::int64_t minislot_index = 0;  // global index since t=0
};

struct RaForwardPayload {
  RequestAccessPacket ra;
};

struct SlotStartPayload {
  int slot_index = 0;
  int station = 0;
  MediaClass media = MediaClass::Voice;
};

struct DeliveryPayload {
  DataPacket packet;
  bool corrupted = false;
  SimTime delivery_time = 0;  // end of the data slot
  int sender_queue_after = 0; // queue length the sender saw after dequeue
};

using EventPayload =
    std::variant<std::monostate, ArrivalPayload, RaSlotPayload,
                 RaForwardPayload, SlotStartPayload, DeliveryPayload>;

struct Event {
  SimTime due = 0;
  std::uint64_t seq = 0;  // assigned at schedule time; ties dispatch in order
  int target = 0;         // node identifier, for tracing
  EventKind kind = EventKind::Arrival;
  EventPayload payload;
};

// Deterministic event queue: dispatch order is strictly (due, seq)
// lexicographic and the clock never moves backwards. The queue knows nothing
// about protocol semantics; handlers live in the simulation.
class EventQueue {
 public:
  // Throws std::logic_error if ev.due < now(): scheduling into the past is a
  // programming error and must halt the run.
  void schedule(Event ev);

  // Dispatches every event with due <= t in (due, seq) order, then advances
  // the clock to exactly t. Returns the number of dispatched events.
  std::uint64_t run_until(SimTime t, const std::function<void(const Event&)>& handler);

  SimTime now() const { return now_; }
  std::size_t pending() const { return heap_.size(); }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.due != b.due) return a.due > b.due;
      return a.seq > b.seq;
    }
  };

  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  SimTime now_ = 0;
  std::uint64_t next_seq_ = 0;
};

}  // namespace amapsim
