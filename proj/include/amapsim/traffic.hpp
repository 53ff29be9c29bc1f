#pragma once

#include <cstdint>
#include <vector>

#include "amapsim/packets.hpp"
#include "amapsim/rng.hpp"

namespace amapsim {

enum class ArrivalDistribution : std::uint8_t { Constant, Exponential };

// One traffic source: a (station, media) pair with its own arrival process,
// transaction-size law, TTL and scheduling parameters.
struct SourceProfile {
  int station = 0;
  MediaClass media = MediaClass::Voice;
  ArrivalDistribution distribution = ArrivalDistribution::Constant;
  SimTime mean_interarrival = 1;      // ticks, > 0
  std::int64_t mean_txn_bytes = 1;    // >= 1
  SimTime ttl = 1;                    // ticks, > 0
  Priority priority;
  int wrr_weight = 1;
};

// Gap until the next transaction. Constant sources return exactly the mean;
// exponential sources draw with the configured mean, rounded to >= 1 tick.
SimTime next_arrival(const SourceProfile& profile, RngStream& rng);

// Offset of the first arrival. Constant sources start at a uniform phase in
// [0, mean) so that equal-rate sources do not fire in lockstep; exponential
// sources are memoryless, so the first gap is an ordinary draw.
SimTime initial_arrival_offset(const SourceProfile& profile, RngStream& rng);

// Creates a transaction at `now`: deadline = now + ttl, size drawn from the
// profile's distribution (constant or exponential mean), rounded to >= 1 byte.
Transaction make_transaction(const SourceProfile& profile, std::uint64_t id,
                             SimTime now, RngStream& rng);

// Splits a transaction into ceil(size / cell_payload) packets. All but
// possibly the last carry exactly cell_payload bytes; sequence indices are
// dense from 0 and every packet inherits the transaction deadline.
std::vector<DataPacket> packetize(const Transaction& txn, int cell_payload_bytes);

inline std::int64_t packet_count_for(std::int64_t size_bytes, int cell_payload_bytes) {
  return (size_bytes + cell_payload_bytes - 1) / cell_payload_bytes;
}

}  // namespace amapsim
