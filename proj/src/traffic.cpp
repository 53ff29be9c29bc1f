#include "amapsim/traffic.hpp"

#include <stdexcept>

namespace amapsim {

SimTime next_arrival(const SourceProfile& profile, RngStream& rng) {
  switch (profile.distribution) {
    case ArrivalDistribution::Constant:
      return profile.mean_interarrival;
    case ArrivalDistribution::Exponential:
      return rng.exponential_ticks(profile.mean_interarrival);
  }
  return profile.mean_interarrival;
}

SimTime initial_arrival_offset(const SourceProfile& profile, RngStream& rng) {
  switch (profile.distribution) {
    case ArrivalDistribution::Constant:
      return static_cast<SimTime>(
          rng.uniform_below(static_cast<std::uint64_t>(profile.mean_interarrival)));
    case ArrivalDistribution::Exponential:
      return rng.exponential_ticks(profile.mean_interarrival);
  }
  return 0;
}

Transaction make_transaction(const SourceProfile& profile, std::uint64_t id,
                             SimTime now, RngStream& rng) {
  Transaction txn;
  txn.id = id;
  txn.station = profile.station;
  txn.media = profile.media;
  txn.created = now;
  txn.deadline = now + profile.ttl;
  if (profile.distribution == ArrivalDistribution::Exponential) {
    txn.size_bytes = rng.exponential_ticks(profile.mean_txn_bytes);
  } else {
    txn.size_bytes = profile.mean_txn_bytes;
  }
  if (txn.size_bytes < 1) txn.size_bytes = 1;
  return txn;
}

std::vector<DataPacket> packetize(const Transaction& txn, int cell_payload_bytes) {
  if (cell_payload_bytes < 1) throw std::invalid_argument("cell payload must be >= 1");
  const std::int64_t count = packet_count_for(txn.size_bytes, cell_payload_bytes);
  std::vector<DataPacket> packets;
  packets.reserve(static_cast<std::size_t>(count));
  std::int64_t remaining = txn.size_bytes;
  for (std::int64_t i = 0; i < count; ++i) {
    DataPacket p;
    p.txn_id = txn.id;
    p.seq_index = static_cast<std::int32_t>(i);
    p.station = txn.station;
    p.media = txn.media;
    p.payload_bytes = static_cast<int>(remaining < cell_payload_bytes ? remaining
                                                                      : cell_payload_bytes);
    p.created = txn.created;
    p.deadline = txn.deadline;
    remaining -= p.payload_bytes;
    packets.push_back(p);
  }
  return packets;
}

}  // namespace amapsim
