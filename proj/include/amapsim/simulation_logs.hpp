#pragma once

#include <vector>

#include "amapsim/packets.hpp"
#include "amapsim/sim_time.hpp"

namespace amapsim {

// Optional per-run logs used by property checks and the acceptance suite.

struct DeliveryRecord {
  DataPacket packet;
  SimTime sent_at = 0;
  SimTime delivered_at = 0;
  int sender_queue_after = 0;  // sender's queue length right after dequeue
};

struct GrantCandidate {
  int station = 0;
  MediaClass media = MediaClass::Voice;
  SimTime deadline = 0;
  double ber = 0.0;
  int demand = 0;
  bool gate_pass = true;
  int granted = 0;
};

struct FrameGrantLog {
  SimTime frame_start = 0;
  std::vector<GrantCandidate> candidates;
};

}  // namespace amapsim
