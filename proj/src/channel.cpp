#include "amapsim/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace amapsim {

FrameLayout FrameLayout::make(std::int64_t link_rate_bps, int cell_bytes,
                              int data_slots, int ra_minislots,
                              int minislot_divisor) {
  if (link_rate_bps <= 0 || cell_bytes < 1 || data_slots < 1 ||
      ra_minislots < 1 || minislot_divisor < 1) {
    throw std::invalid_argument("invalid frame layout parameters");
  }
  FrameLayout layout;
  layout.data_slots = data_slots;
  layout.ra_minislots = ra_minislots;
  const std::int64_t bits = 8LL * cell_bytes;
  layout.slot_duration =
      (bits * kTicksPerSecond + link_rate_bps - 1) / link_rate_bps;
  layout.minislot_duration =
      (layout.slot_duration + minislot_divisor - 1) / minislot_divisor;
  return layout;
}

double corruption_probability(int payload_bytes, double ber) {
  if (ber <= 0.0) return 0.0;
  const double bits = 8.0 * payload_bytes;
  return -std::expm1(bits * std::log1p(-ber));
}

TxResult transmit(const DataPacket& packet, ChannelState state, RngStream& rng) {
  const double p = corruption_probability(packet.payload_bytes, state.ber);
  if (p <= 0.0) return TxResult::Delivered;
  return rng.uniform01() < p ? TxResult::Corrupted : TxResult::Delivered;
}

RaOutcome ra_minislot_resolve(std::vector<RaContender> contenders) {
  RaOutcome out;
  out.contenders = std::move(contenders);
  if (out.contenders.empty()) {
    out.kind = RaOutcome::Kind::Idle;
  } else if (out.contenders.size() == 1) {
    out.kind = RaOutcome::Kind::Success;
    out.winner = out.contenders.front();
  } else {
    out.kind = RaOutcome::Kind::Collision;
  }
  return out;
}

int backoff_delay(int attempt, RngStream& rng) {
  if (attempt < 1) throw std::invalid_argument("backoff attempt must be >= 1");
  std::uint64_t window = attempt >= 6 ? 64 : (std::uint64_t{1} << attempt);
  if (window > 64) window = 64;
  return static_cast<int>(rng.uniform_below(window));
}

}  // namespace amapsim
