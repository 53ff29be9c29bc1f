#pragma once

#include <cstdint>

#include "amapsim/media.hpp"
#include "amapsim/sim_time.hpp"

namespace amapsim {

// A transaction is the unit of generation and the unit the TTL attaches to:
// every packet of a transaction inherits its deadline, and a transaction is
// counted lost as soon as any of its packets is dropped.
struct Transaction {
  std::uint64_t id = 0;
  int station = 0;
  MediaClass media = MediaClass::Voice;
  std::int64_t size_bytes = 0;
  SimTime created = 0;
  SimTime deadline = 0;
};

struct DataPacket {
  std::uint64_t txn_id = 0;
  std::int32_t seq_index = 0;  // dense from 0 within the transaction
  int station = 0;
  MediaClass media = MediaClass::Voice;
  int payload_bytes = 0;
  bool pgbk = false;  // set at transmit time, not at generation time
  SimTime created = 0;
  SimTime deadline = 0;
};

// Stable identifier for metrics bookkeeping. Sequence indices stay well
// below 2^20 for any transaction the generator produces.
inline std::uint64_t packet_id(const DataPacket& p) {
  return (p.txn_id << 20) | static_cast<std::uint64_t>(p.seq_index);
}

// Reservation request sent over the random-access subchannel: source and
// destination addresses, media type, advertised bit rate, time-to-live,
// channel state and the requested service class.
struct RequestAccessPacket {
  int source_station = 0;
  int dest_mobile = 0;
  MediaClass media = MediaClass::Voice;
  std::int64_t bit_rate_bps = 0;
  SimTime ttl_deadline = 0;       // earliest deadline among queued transactions
  double csi_ber = 0.0;
  Priority qos_priority;
  int pending_packets = 0;        // >= 1: stations only request when they hold data
};

}  // namespace amapsim
