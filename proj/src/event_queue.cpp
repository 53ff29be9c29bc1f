#include "amapsim/event_queue.hpp"

#include <stdexcept>
#include <string>

namespace amapsim {

const char* event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::Arrival: return "arrival";
    case EventKind::RaSlot: return "ra-slot";
    case EventKind::FrameBoundary: return "frame-boundary";
    case EventKind::SlotStart: return "slot-start";
    case EventKind::PacketDelivered: return "packet-delivered";
    case EventKind::TtlSweep: return "ttl-sweep";
  }
  return "?";
}

void EventQueue::schedule(Event ev) {
  if (ev.due < now_) {
    throw std::logic_error("event scheduled in the past: due=" +
                           std::to_string(ev.due) + " now=" +
                           std::to_string(now_));
  }
  ev.seq = next_seq_++;
  heap_.push(std::move(ev));
}

std::uint64_t EventQueue::run_until(SimTime t,
                                    const std::function<void(const Event&)>& handler) {
  std::uint64_t dispatched = 0;
  while (!heap_.empty() && heap_.top().due <= t) {
    Event ev = heap_.top();
    heap_.pop();
    now_ = ev.due;
    ++dispatched;
    handler(ev);
  }
  if (t > now_) now_ = t;
  return dispatched;
}

}  // namespace amapsim
