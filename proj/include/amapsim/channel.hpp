#pragma once

#include <cstdint>
#include <vector>

#include "amapsim/packets.hpp"
#include "amapsim/rng.hpp"

namespace amapsim {

// TDMA frame geometry. Each frame carries a block of request-access
// minislots followed by the data slots; durations are integer ticks, so
// frame_duration is exactly the sum of its parts.
struct FrameLayout {
  int data_slots = 16;
  int ra_minislots = 8;
  SimTime slot_duration = 275;      // ceil(packet bits / link rate), ticks
  SimTime minislot_duration = 35;   // ceil(slot / divisor)

  SimTime ra_block_duration() const { return ra_minislots * minislot_duration; }
  SimTime frame_duration() const {
    return data_slots * slot_duration + ra_block_duration();
  }
  SimTime minislot_end(SimTime frame_start, int k) const {
    return frame_start + (k + 1) * minislot_duration;
  }
  SimTime data_slot_start(SimTime frame_start, int index) const {
    return frame_start + ra_block_duration() + index * slot_duration;
  }

  static FrameLayout make(std::int64_t link_rate_bps, int cell_bytes,
                          int data_slots, int ra_minislots, int minislot_divisor);
};

// Channel state information for one station's uplink, held as a bit error
// ratio. Static for the duration of a run.
struct ChannelState {
  double ber = 0.0;
};

// Probability that at least one of the 8*payload_bytes bits is flipped:
// 1 - (1 - ber)^bits, evaluated through log1p so that operating points such
// as ber = 1e-12 keep full precision.
double corruption_probability(int payload_bytes, double ber);

enum class TxResult : std::uint8_t { Delivered, Corrupted };

TxResult transmit(const DataPacket& packet, ChannelState state, RngStream& rng);

// Outcome of one request-access minislot.
struct RaContender {
  int station = 0;
  MediaClass media = MediaClass::Voice;
};

struct RaOutcome {
  enum class Kind : std::uint8_t { Idle, Success, Collision };
  Kind kind = Kind::Idle;
  RaContender winner;                    // valid when kind == Success
  std::vector<RaContender> contenders;   // everyone heard in the minislot
};

// Empty -> idle, singleton -> success, otherwise collision; every contender
// learns the outcome at the minislot end.
RaOutcome ra_minislot_resolve(std::vector<RaContender> contenders);

// Binary exponential backoff after the attempt-th collision: uniform integer
// number of minislots in [0, min(2^attempt, 64) - 1].
int backoff_delay(int attempt, RngStream& rng);

}  // namespace amapsim
